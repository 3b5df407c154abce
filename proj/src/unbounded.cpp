#include "finstar/unbounded.hpp"

#include <cmath>

namespace finstar {

double Symbol::eval(std::size_t n) const {
  switch (family) {
    case Family::Affine:
      return alpha * static_cast<double>(n) + beta;
    case Family::Power:
      return alpha * std::pow(static_cast<double>(n), exponent);
    case Family::Table:
      if (n == 0 || n > table.size())
        throw InvalidInput("symbol table lookup out of range",
                           {{"n", double(n)}});
      return table[n - 1];
  }
  return 0.0;
}

double Symbol::growth_exponent() const {
  switch (family) {
    case Family::Affine:
      return alpha != 0.0 ? 1.0 : 0.0;
    case Family::Power:
      return alpha != 0.0 ? exponent : 0.0;
    case Family::Table:
      return 0.0;  // finite tables are bounded
  }
  return 0.0;
}

bool Symbol::bounded() const { return growth_exponent() <= 0.0; }

double Weights::raw(std::size_t n) const {
  switch (family) {
    case Family::Uniform:
      return 1.0;
    case Family::Geometric:
      return std::pow(ratio, static_cast<double>(n));
    case Family::PowerLaw:
      return std::pow(static_cast<double>(n), -exponent);
    case Family::Table:
      if (n == 0 || n > table.size())
        throw InvalidInput("weight table lookup out of range",
                           {{"n", double(n)}});
      return table[n - 1];
  }
  return 0.0;
}

std::vector<double> Weights::normalized(std::size_t truncation) const {
  std::vector<double> w(truncation);
  double sum = 0.0;
  for (std::size_t n = 1; n <= truncation; ++n) {
    w[n - 1] = raw(n);
    if (w[n - 1] <= 0.0)
      throw InvalidInput("weights must be positive", {{"n", double(n)}});
    sum += w[n - 1];
  }
  for (double& x : w) x /= sum;
  return w;
}

SeqVector SeqVector::basis(std::size_t n) {
  SeqVector x;
  x.entries[n] = 1.0;
  return x;
}

double SymbolFn::eval(double g) const {
  switch (kind) {
    case Kind::Identity:
      return g;
    case Kind::Power:
      return std::pow(std::abs(g), power) * (g < 0.0 && std::fmod(power, 2.0) == 1.0 ? -1.0 : 1.0);
    case Kind::Bounded:
      return bound * std::tanh(g);
  }
  return g;
}

double SymbolFn::growth(double symbol_growth) const {
  switch (kind) {
    case Kind::Identity:
      return symbol_growth;
    case Kind::Power:
      return power * symbol_growth;
    case Kind::Bounded:
      return 0.0;
  }
  return symbol_growth;
}

DomainCertificate domain_membership(const DiagonalOperator& a,
                                    const SeqVector& x, const SymbolFn& f) {
  DomainCertificate out;
  if (x.finitely_supported()) {
    out.member = true;
    out.note = "finite support";
    return out;
  }
  const double t = f.growth(a.symbol.growth_exponent());
  if (a.symbol.family != Symbol::Family::Table) {
    // Power-law membership: sum n^{2t} n^{-2s} converges iff 2(s-t) > 1.
    out.p_exponent = 2.0 * (x.s - t);
    out.member = out.p_exponent > 1.0;
    out.note = "p-series exponent";
    return out;
  }
  // Fallback: partial sums at N and 2N with a divergence heuristic.
  out.heuristic = true;
  auto partial = [&](std::size_t n_max) {
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      double xn = x.coeff * std::pow(double(n), -x.s);
      double fg = n <= a.symbol.table.size() ? f.eval(a.symbol.eval(n)) : 0.0;
      sum += fg * fg * xn * xn;
    }
    return sum;
  };
  double s1 = partial(a.truncation / 2), s2 = partial(a.truncation);
  out.member = s1 == 0.0 || s2 / s1 <= 1.0 + 1e-6;
  out.note = "partial-sum heuristic";
  return out;
}

SeqVector apply_function(const DiagonalOperator& a, const SymbolFn& f,
                         const SeqVector& x, std::size_t truncation) {
  if (!x.finitely_supported())
    throw InvalidInput("apply_function needs a finitely supported vector");
  SeqVector out;
  for (const auto& [n, v] : x.entries) {
    if (n > truncation)
      throw SupportExceedsTruncation("support index beyond truncation",
                                     {{"index", double(n)},
                                      {"truncation", double(truncation)}});
    out.entries[n] = v * f.eval(a.symbol.eval(n));
  }
  return out;
}

double weighted_norm(const DiagonalOperator& a, const SeqVector& x) {
  if (!x.finitely_supported())
    throw InvalidInput("weighted_norm needs a finitely supported vector");
  std::vector<double> w = a.weights.normalized(a.truncation);
  double sum = 0.0;
  for (const auto& [n, v] : x.entries) {
    if (n > a.truncation)
      throw SupportExceedsTruncation("support index beyond truncation",
                                     {{"index", double(n)}});
    sum += w[n - 1] * std::norm(v);
  }
  return std::sqrt(sum);
}

CayleyPair cayley_pair(const DiagonalOperator& a, std::size_t sample) {
  if (sample == 0) sample = std::min<std::size_t>(a.truncation, 10000);
  CayleyPair out;
  out.u.resize(sample);
  out.roundtrip_residual = 0.0;
  const cxd i_unit(0.0, 1.0);
  for (std::size_t n = 1; n <= sample; ++n) {
    double g = a.symbol.eval(n);
    // 1 - u = 2i/(g + i) avoids cancellation for large symbols.
    cxd d = 2.0 * i_unit / (g + i_unit);
    cxd u = cxd(1.0) - d;
    out.u[n - 1] = u;
    // Inverse transform: g = i (1 + u) / (1 - u) = i (2 - d) / d.
    cxd back = i_unit * (cxd(2.0) - d) / d;
    double denom = std::max(1.0, std::abs(g));
    out.roundtrip_residual =
        std::max(out.roundtrip_residual, std::abs(back - g) / denom);
  }
  return out;
}

SeqVector evolve(const DiagonalOperator& a, double t, const SeqVector& x) {
  if (!x.finitely_supported())
    throw InvalidInput("evolve needs a finitely supported vector");
  SeqVector out;
  for (const auto& [n, v] : x.entries)
    out.entries[n] = v * std::polar(1.0, -t * a.symbol.eval(n));
  return out;
}

double generator_check(const DiagonalOperator& a, const SeqVector& x,
                       double h) {
  if (h <= 0.0) throw InvalidInput("step must be positive");
  SeqVector uh = evolve(a, h, x);
  std::vector<double> w = a.weights.normalized(a.truncation);
  const cxd ih(0.0, h);
  double sum = 0.0;
  for (const auto& [n, v] : x.entries) {
    if (n > a.truncation)
      throw SupportExceedsTruncation("support index beyond truncation",
                                     {{"index", double(n)}});
    cxd diff = -(uh.entries.at(n) - v) / ih - a.symbol.eval(n) * v;
    sum += w[n - 1] * std::norm(diff);
  }
  return std::sqrt(sum);
}

}  // namespace finstar
