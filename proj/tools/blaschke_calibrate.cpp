// Brute-force sphere sums for the GAMMA3 and LAMBDA2 orbits of 0, computed
// in the upper half plane in long double, independent of the library.
// Writes the frozen Blaschke thresholds:
//   theta_converging = max GAMMA3 ratio + gap/4
//   theta_diverging  = min LAMBDA2 ratio - gap/4
// over sigma_{L+1}/sigma_L for 4 <= L <= 11, gap = min LAMBDA2 - max GAMMA3.
// With --check FILE it recomputes and compares instead of writing.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using Z = std::complex<long double>;

struct Gen {
  long double a, b, c, d;
};

// Letters 0..3 are G1, G1^-1, G2, G2^-1; letter ^ 1 is the inverse.
std::vector<Gen> generators(long double k) {
  return {{1, k, 0, 1}, {1, -k, 0, 1}, {1, 0, k, 1}, {1, 0, -k, 1}};
}

long double one_minus_abs(Z tau) {
  // |C(tau)|^2 = |tau - i|^2 / |tau + i|^2, so 1 - |C|^2 = 4 Im(tau) / |tau + i|^2.
  const long double s = 4.0L * tau.imag() / std::norm(tau + Z(0, 1));
  return s / (1.0L + std::sqrt(1.0L - s));
}

// Words are grown on the left: the point of l w is l applied to the point of w.
void walk(const std::vector<Gen>& g, Z tau, int first, int depth, int max_depth,
          std::vector<long double>& sigma) {
  sigma[static_cast<std::size_t>(depth)] += one_minus_abs(tau);
  if (depth == max_depth) return;
  for (int l = 0; l < 4; ++l) {
    if (depth > 0 && l == (first ^ 1)) continue;
    const auto& m = g[static_cast<std::size_t>(l)];
    walk(g, (m.a * tau + m.b) / (m.c * tau + m.d), l, depth + 1, max_depth, sigma);
  }
}

std::vector<long double> sphere_sums(long double k, int max_depth) {
  std::vector<long double> sigma(static_cast<std::size_t>(max_depth) + 1, 0.0L);
  walk(generators(k), Z(0, 1), -1, 0, max_depth, sigma);
  return sigma;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brute-force Blaschke calibration"};
  std::string output;
  std::string check;
  int length = 12;
  int lo = 4;
  app.add_option("--output", output, "Write the calibration JSON here");
  app.add_option("--check", check, "Compare against an existing calibration file");
  app.add_option("--L", length, "Enumeration depth")->check(CLI::Range(6, 14));
  CLI11_PARSE(app, argc, argv);

  const auto gamma = sphere_sums(3.0L, length);
  const auto lambda = sphere_sums(2.0L, length);
  auto ratios = [&](const std::vector<long double>& s) {
    std::vector<double> r;
    for (int l = 0; l < length; ++l)
      r.push_back(static_cast<double>(s[static_cast<std::size_t>(l) + 1] / s[static_cast<std::size_t>(l)]));
    return r;
  };
  const auto rg = ratios(gamma);
  const auto rl = ratios(lambda);
  double max_g = 0.0, min_l = 1e300;
  for (int l = lo; l < length; ++l) {
    max_g = std::max(max_g, rg[static_cast<std::size_t>(l)]);
    min_l = std::min(min_l, rl[static_cast<std::size_t>(l)]);
  }
  const double gap = min_l - max_g;

  nlohmann::ordered_json j;
  j["length"] = length;
  j["base"] = {0.0, 0.0};
  j["ratio_range"] = {lo, length - 1};
  j["window"] = 4;
  j["theta_converging"] = max_g + gap / 4.0;
  j["theta_diverging"] = min_l - gap / 4.0;
  auto block = [&](const std::vector<long double>& s, const std::vector<double>& r) {
    nlohmann::ordered_json b;
    std::vector<double> sd(s.begin(), s.end());
    b["sigma"] = sd;
    b["ratios"] = r;
    return b;
  };
  j["GAMMA3"] = block(gamma, rg);
  j["LAMBDA2"] = block(lambda, rl);

  if (!check.empty()) {
    std::ifstream in(check);
    if (!in) {
      std::cerr << "cannot read " << check << "\n";
      return 1;
    }
    const auto frozen = nlohmann::json::parse(in);
    const double tg = frozen.at("theta_converging"), tl = frozen.at("theta_diverging");
    const bool ok = gap > 0.0 && std::abs(tg - j["theta_converging"].get<double>()) < 1e-12 &&
                    std::abs(tl - j["theta_diverging"].get<double>()) < 1e-12;
    std::printf("%s theta_converging=%.12f theta_diverging=%.12f gap=%.6f\n",
                ok ? "MATCH" : "MISMATCH", tg, tl, gap);
    return ok ? 0 : 1;
  }
  if (gap <= 0.0) {
    std::cerr << "GAMMA3 and LAMBDA2 ratios overlap; no threshold separates them\n";
    return 1;
  }
  const std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream(output) << text;
  }
  return 0;
}
