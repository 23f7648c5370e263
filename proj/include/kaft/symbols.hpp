#ifndef KAFT_SYMBOLS_HPP
#define KAFT_SYMBOLS_HPP

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kaft/errors.hpp"
#include "kaft/params.hpp"
#include "kaft/quadrature.hpp"

namespace kaft {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A multiplier symbol h (or Paley weight psi): nonnegative, radial.
///
/// Closed-form kinds (power, indicator) admit exact superlevel-set measures;
/// sampled and composite symbols fall back to quadrature sums over the grid.
class MultiplierSymbol {
 public:
  enum class Kind { Power, Indicator, Constant, Sampled, Composite };

  /// The constant symbol c (identity multiplier for c = 1).
  static MultiplierSymbol constant(double c) {
    MultiplierSymbol s;
    s.kind_ = Kind::Constant;
    s.scale_ = c;
    return s;
  }

  /// scale * |xi|^{-gamma}, gamma > 0.
  static MultiplierSymbol power(double gamma, double scale = 1.0) {
    if (!(gamma > 0.0))
      throw ExponentOutOfRange("power symbol requires gamma > 0");
    MultiplierSymbol s;
    s.kind_ = Kind::Power;
    s.gamma_ = gamma;
    s.scale_ = scale;
    return s;
  }

  /// scale * 1_{|xi| <= R}.
  static MultiplierSymbol indicator(double R, double scale = 1.0) {
    if (!(R > 0.0)) throw ExponentOutOfRange("indicator symbol requires R > 0");
    MultiplierSymbol s;
    s.kind_ = Kind::Indicator;
    s.radius_ = R;
    s.scale_ = scale;
    return s;
  }

  /// Values aligned with a quadrature rule's nodes.
  static MultiplierSymbol sampled(const QuadratureRule& rule, Eigen::VectorXd values) {
    if (values.size() != static_cast<Eigen::Index>(rule.size()))
      throw Error("sampled symbol: value/node length mismatch");
    MultiplierSymbol s;
    s.kind_ = Kind::Sampled;
    s.rule_ = &rule;
    s.values_ = std::move(values);
    return s;
  }

  /// Pointwise product of two symbols.
  static MultiplierSymbol composite(MultiplierSymbol lhs, MultiplierSymbol rhs) {
    MultiplierSymbol s;
    s.kind_ = Kind::Composite;
    s.factors_.push_back(std::make_shared<MultiplierSymbol>(std::move(lhs)));
    s.factors_.push_back(std::make_shared<MultiplierSymbol>(std::move(rhs)));
    return s;
  }

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double scale() const { return scale_; }
  double radius() const { return radius_; }

  /// Pointwise evaluation. Power symbols return +inf at xi = 0.
  double operator()(double xi) const {
    const double axi = std::abs(xi);
    switch (kind_) {
      case Kind::Power:
        return axi == 0.0 ? kInf : scale_ * std::pow(axi, -gamma_);
      case Kind::Indicator:
        return axi <= radius_ ? scale_ : 0.0;
      case Kind::Constant:
        return scale_;
      case Kind::Sampled: {
        // nearest-node lookup; sampled symbols are meant for on-grid use
        const auto& nodes = rule_->nodes;
        auto it = std::lower_bound(nodes.begin(), nodes.end(), xi);
        std::size_t i = static_cast<std::size_t>(it - nodes.begin());
        if (i == nodes.size()) i = nodes.size() - 1;
        if (i > 0 && std::abs(nodes[i - 1] - xi) < std::abs(nodes[i] - xi)) --i;
        return values_[static_cast<Eigen::Index>(i)];
      }
      case Kind::Composite: {
        double v = 1.0;
        for (const auto& f : factors_) v *= (*f)(xi);
        return v;
      }
    }
    return 0.0;
  }

  bool closed_form() const {
    return kind_ == Kind::Power || kind_ == Kind::Indicator || kind_ == Kind::Constant;
  }

  const QuadratureRule* sample_rule() const { return rule_; }

 private:
  Kind kind_ = Kind::Indicator;
  double gamma_ = 0.0;
  double scale_ = 1.0;
  double radius_ = 1.0;
  const QuadratureRule* rule_ = nullptr;
  Eigen::VectorXd values_;
  std::vector<std::shared_ptr<MultiplierSymbol>> factors_;
};

/// Superlevel-set measure with a truncation flag for sampled evaluation.
struct LevelMeasure {
  double value = 0.0;    ///< mu_{k,a}{ psi >= t }, may be +inf
  bool truncated = false;  ///< sampled path: the set reaches the domain cut
};

namespace detail {

/// mu_{k,a} of the centered ball of radius R: (2)R^D/D in 1D, R^D/D radially.
inline double ball_measure(double R, const Params& p) {
  const double D = p.homogeneous_dim();
  const double fac = p.radial ? 1.0 : 2.0;
  return fac * std::pow(R, D) / D;
}

}  // namespace detail

/// mu_{k,a}{ xi : psi(xi) >= t }. Exact for closed-form radial symbols;
/// quadrature-weight sums (relative to the symbol's rule, or `rule` for
/// composites) otherwise.
inline LevelMeasure superlevel_measure(const MultiplierSymbol& psi, double t,
                                       const Params& params,
                                       const QuadratureRule* rule = nullptr) {
  if (!(t > 0.0)) throw ExponentOutOfRange("superlevel_measure: t must be > 0");
  LevelMeasure out;
  switch (psi.kind()) {
    case MultiplierSymbol::Kind::Power: {
      // { scale |xi|^-gamma >= t } is the ball of radius (t/scale)^(-1/gamma)
      const double R = std::pow(t / psi.scale(), -1.0 / psi.gamma());
      out.value = detail::ball_measure(R, params);
      return out;
    }
    case MultiplierSymbol::Kind::Indicator: {
      out.value = t <= psi.scale() ? detail::ball_measure(psi.radius(), params) : 0.0;
      return out;
    }
    case MultiplierSymbol::Kind::Constant: {
      // whole space (infinite measure) below the constant, empty above
      out.value = t <= psi.scale() ? kInf : 0.0;
      return out;
    }
    default: {
      const QuadratureRule* r = psi.sample_rule() ? psi.sample_rule() : rule;
      if (r == nullptr)
        throw Error("superlevel_measure: sampled/composite symbol needs a rule");
      double s = 0.0;
      for (std::size_t i = 0; i < r->size(); ++i) {
        if (psi(r->nodes[i]) >= t) {
          s += r->weights[i];
          if (i == r->size() - 1 || (!r->params.radial && i == 0))
            out.truncated = true;
        }
      }
      out.value = s;
      return out;
    }
  }
}

/// sup_{s>0} s * mu{psi >= s}^expo, exact for closed forms, numeric sup over a
/// log-spaced grid otherwise. Returns +inf (never throws) when unbounded.
/// `expo` = 1 gives the Paley functional; `expo` = 1/p - 1/q the Hormander
/// bound core.
inline double sup_level_functional(const MultiplierSymbol& psi, double expo,
                                   const Params& params,
                                   const QuadratureRule* rule = nullptr) {
  const double D = params.homogeneous_dim();
  if (psi.kind() == MultiplierSymbol::Kind::Power) {
    // s * (ball((s/c)^{-1/g}))^expo = const * s^{1 - expo D/g}
    const double g = psi.gamma();
    if (std::abs(expo * D / g - 1.0) > 1e-13) return kInf;
    return psi.scale() * std::pow(detail::ball_measure(1.0, params), expo);
  }
  if (psi.kind() == MultiplierSymbol::Kind::Indicator) {
    // supremum attained at s = scale
    return psi.scale() * std::pow(detail::ball_measure(psi.radius(), params), expo);
  }
  if (psi.kind() == MultiplierSymbol::Kind::Constant) {
    return psi.scale() > 0.0 ? kInf : 0.0;
  }

  // numeric sup over log-spaced levels, with endpoint divergence detection
  const int n_grid = 2000;
  const double lo = 1e-6, hi = 1e6;
  double best = 0.0;
  double first = 0.0, last = 0.0, second = 0.0, penultimate = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double s = lo * std::pow(hi / lo, double(i) / (n_grid - 1));
    const double m = superlevel_measure(psi, s, params, rule).value;
    const double v = m > 0.0 ? s * std::pow(m, expo) : 0.0;
    best = std::max(best, v);
    if (i == 0) first = v;
    if (i == 1) second = v;
    if (i == n_grid - 2) penultimate = v;
    if (i == n_grid - 1) last = v;
  }
  // growing toward either endpoint of the s-grid: treat as divergent
  if (first > 0.0 && second > 0.0 && first >= best * (1.0 - 1e-9) && first > second)
    return kInf;
  if (last > 0.0 && penultimate > 0.0 && last >= best * (1.0 - 1e-9) && last > penultimate)
    return kInf;
  return best;
}

/// Paley functional M_psi = sup_{t>0} t * mu{psi >= t}.
inline double paley_functional(const MultiplierSymbol& psi, const Params& params,
                               const QuadratureRule* rule = nullptr) {
  return sup_level_functional(psi, 1.0, params, rule);
}

/// Parse the symbol mini-language:
///   power:gamma=2[,scale=c]   indicator:R=1[,scale=c]   sampled:<path>
/// Sampled files are CSV lines "node,value" aligned with `rule`.
inline MultiplierSymbol parse_symbol(const std::string& spec,
                                     const QuadratureRule* rule = nullptr) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto get_field = [&](const std::string& key) -> std::optional<double> {
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq != std::string::npos && item.substr(0, eq) == key)
        return std::stod(item.substr(eq + 1));
    }
    return std::nullopt;
  };
  if (head == "power") {
    const auto g = get_field("gamma");
    if (!g) throw Error("power symbol spec needs gamma=");
    return MultiplierSymbol::power(*g, get_field("scale").value_or(1.0));
  }
  if (head == "indicator") {
    const auto R = get_field("R");
    if (!R) throw Error("indicator symbol spec needs R=");
    return MultiplierSymbol::indicator(*R, get_field("scale").value_or(1.0));
  }
  if (head == "const" || head == "constant") {
    // accept both "const:1" and "const:c=1"
    const auto c = get_field("c");
    return MultiplierSymbol::constant(c ? *c : (rest.empty() ? 1.0 : std::stod(rest)));
  }
  if (head == "sampled") {
    if (rule == nullptr) throw Error("sampled symbol spec needs a quadrature rule");
    std::ifstream in(rest);
    if (!in) throw Error("sampled symbol: cannot open " + rest);
    Eigen::VectorXd vals(static_cast<Eigen::Index>(rule->size()));
    std::string line;
    Eigen::Index i = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (i >= vals.size()) throw Error("sampled symbol: too many rows");
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw Error("sampled symbol: bad row " + line);
      vals[i++] = std::stod(line.substr(comma + 1));
    }
    if (i != vals.size()) throw Error("sampled symbol: row count mismatch");
    return MultiplierSymbol::sampled(*rule, std::move(vals));
  }
  throw Error("unknown symbol spec: " + spec);
}

}  // namespace kaft

#endif  // KAFT_SYMBOLS_HPP
