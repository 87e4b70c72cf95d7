// Compact manifold mini-language for the command line, and the dispatch
// from a ManifoldSpec to its Spectrum:
//   sphere:N:R        round sphere S^N of radius R
//   circle:L          circle of circumference L
//   torus:L[:L2]      square/rectangular flat 2-torus
//   torus:a,b;c,d     general 2d lattice basis (rows separated by ';')
//   ctorus:L:N:AMP:KX[:KY]  conformal torus, u = AMP cos(2 pi (KX s + KY t))
//                     on an N x N grid over the side-L square torus
//   A*B               Riemannian product (left associative)
#ifndef SPECTRALFLOW_IO_MANIFOLD_PARSE_HPP
#define SPECTRALFLOW_IO_MANIFOLD_PARSE_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spectralflow/manifolds/conformal_torus.hpp"
#include "spectralflow/manifolds/curvature.hpp"
#include "spectralflow/manifolds/product.hpp"
#include "spectralflow/manifolds/sphere.hpp"
#include "spectralflow/manifolds/torus.hpp"

namespace spectralflow {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("manifold string: bad ") + what + " '" + s + "'");
  }
}

inline int parse_int(const std::string& s, const char* what) {
  const double v = parse_real(s, what);
  if (v != std::floor(v)) throw std::invalid_argument(std::string("manifold string: ") + what +
                                                      " must be an integer");
  return static_cast<int>(v);
}

inline ManifoldSpec<double> parse_single(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& kind = parts.front();
  if (kind == "sphere") {
    if (parts.size() != 3) throw std::invalid_argument("manifold string: sphere:N:R");
    return make_sphere(parse_int(parts[1], "sphere dimension"),
                       parse_real(parts[2], "sphere radius"));
  }
  if (kind == "circle") {
    if (parts.size() != 2) throw std::invalid_argument("manifold string: circle:L");
    return make_circle(parse_real(parts[1], "circumference"));
  }
  if (kind == "torus") {
    if (parts.size() == 2 && parts[1].find(',') == std::string::npos)
      return make_square_torus(2, parse_real(parts[1], "torus side"));
    if (parts.size() == 3) {
      Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(2, 2);
      basis(0, 0) = parse_real(parts[1], "torus side");
      basis(1, 1) = parse_real(parts[2], "torus side");
      FlatTorus<double> t{basis};
      t.validate();
      return ManifoldSpec<double>{std::move(t)};
    }
    if (parts.size() == 2) {
      const auto rows = split(parts[1], ';');
      if (rows.empty()) throw std::invalid_argument("manifold string: empty torus basis");
      const auto first = split(rows[0], ',');
      Eigen::MatrixXd basis(rows.size(), first.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cols = split(rows[i], ',');
        if (cols.size() != first.size())
          throw std::invalid_argument("manifold string: ragged torus basis");
        for (std::size_t j = 0; j < cols.size(); ++j)
          basis(i, j) = parse_real(cols[j], "basis entry");
      }
      FlatTorus<double> t{basis.transpose()};  // rows in the string are basis vectors
      t.validate();
      return ManifoldSpec<double>{std::move(t)};
    }
    throw std::invalid_argument("manifold string: torus:L, torus:L1:L2 or torus:a,b;c,d");
  }
  if (kind == "ctorus") {
    if (parts.size() != 5 && parts.size() != 6)
      throw std::invalid_argument("manifold string: ctorus:L:N:AMP:KX[:KY]");
    const double side = parse_real(parts[1], "ctorus side");
    const int n = parse_int(parts[2], "ctorus grid");
    const double amp = parse_real(parts[3], "ctorus amplitude");
    const int kx = parse_int(parts[4], "ctorus mode");
    const int ky = parts.size() == 6 ? parse_int(parts[5], "ctorus mode") : 0;
    ConformalTorus<double> ct;
    ct.basis << side, 0, 0, side;
    ct.u.resize(n, n);
    const double two_pi = 2 * std::numbers::pi;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        ct.u(i, j) = amp * std::cos(two_pi * (double(kx) * i + double(ky) * j) / n);
    ct.validate();
    return ManifoldSpec<double>{std::move(ct)};
  }
  throw std::invalid_argument("manifold string: unknown kind '" + kind + "'");
}

}  // namespace detail

inline ManifoldSpec<double> parse_manifold(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("manifold string: empty");
  const auto factors = detail::split(text, '*');
  ManifoldSpec<double> spec = detail::parse_single(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i)
    spec = make_product(std::move(spec), detail::parse_single(factors[i]));
  return spec;
}

struct SpectrumKnobs {
  double cutoff = 1000.0;  // eigenvalue cutoff for lattice/product enumeration
  int k_max = -1;          // sphere level cap; derived from cutoff when < 0
  int count = 64;          // eigenvalues requested from discretized operators
};

/// Spectrum of any parsed manifold. Spheres honor k_max when given and
/// derive it from the cutoff otherwise; products enumerate both factors to
/// the product cutoff.
inline Spectrum<double> spectrum_of(const ManifoldSpec<double>& spec, const SpectrumKnobs& knobs) {
  return std::visit(
      [&knobs](const auto& k) -> Spectrum<double> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, RoundSphere<double>>) {
          int k_max = knobs.k_max;
          if (k_max < 0) {
            k_max = 0;
            while (double(k_max + 1) * double(k_max + k.n) / (k.radius * k.radius) <=
                       knobs.cutoff &&
                   k_max < 20000000)
              ++k_max;
            k_max = std::max(k_max, 1);
          }
          return sphere_spectrum(k.n, k.radius, k_max);
        } else if constexpr (std::is_same_v<K, FlatTorus<double>>) {
          return torus_spectrum(k, knobs.cutoff);
        } else if constexpr (std::is_same_v<K, ConformalTorus<double>>) {
          return conformal_torus_spectrum(k, knobs.count);
        } else {
          SpectrumKnobs inner = knobs;
          inner.k_max = -1;
          const auto a = spectrum_of(*k.a, inner);
          const auto b = spectrum_of(*k.b, inner);
          return product_spectrum(a, b, std::min(a.cutoff, b.cutoff));
        }
      },
      spec.kind);
}

}  // namespace spectralflow

#endif
