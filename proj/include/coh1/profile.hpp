#pragma once

// Closed-form profile functions p(t) for metric blocks, evaluated as
// third-order jets.  Every catalog geometry is assembled from these kinds, so
// each evaluator returns exact analytic derivatives.  The one exception is
// UserTable, which interpolates sampled data and is flagged verify_only:
// tabulated profiles may feed residual evaluation but never root
// classification.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coh1/jet.hpp"

namespace coh1 {

class Profile;

namespace profile_kind {

// p(t) = c
struct Constant {
  double c = 1.0;
};

// p(t) = scale * sin^2(omega * t + phase)
struct SinSq {
  double scale = 1.0;
  double omega = 1.0;
  double phase = 0.0;
};

// p(t) = scale * cos^2(omega * t + phase)
struct CosSq {
  double scale = 1.0;
  double omega = 1.0;
  double phase = 0.0;
};

// p(t) = offset + scale * sin(omega * t + phase)
struct SinFirst {
  double scale = 1.0;
  double omega = 1.0;
  double phase = 0.0;
  double offset = 0.0;
};

// p(t) = offset + scale * cos(omega * t + phase)
struct CosFirst {
  double scale = 1.0;
  double omega = 1.0;
  double phase = 0.0;
  double offset = 0.0;
};

// p(t) = exp(2 * a * t)
struct Exp2 {
  double a = 1.0;
};

// p(t) = c1^2 * (c2 + t)^(2q)
struct PowerLaw {
  double c1 = 1.0;
  double c2 = 1.0;
  double q = 1.0;
};

// p(t) = inner(t)^2
struct SquareOf {
  std::shared_ptr<const Profile> inner;
};

// Cheeger deformation of an inner profile: p(t) = inner(t) / (1 + s*inner(t))
struct Cheeger {
  std::shared_ptr<const Profile> inner;
  double s = 0.0;
};

// Uniformly sampled values; jets come from local polynomial interpolation.
struct UserTable {
  double t0 = 0.0;
  double dt = 1.0;
  std::shared_ptr<const std::vector<double>> values;
};

}  // namespace profile_kind

using ProfileKind =
    std::variant<profile_kind::Constant, profile_kind::SinSq,
                 profile_kind::CosSq, profile_kind::SinFirst,
                 profile_kind::CosFirst, profile_kind::Exp2,
                 profile_kind::PowerLaw, profile_kind::SquareOf,
                 profile_kind::Cheeger, profile_kind::UserTable>;

class Profile {
 public:
  Profile() : kind_(profile_kind::Constant{1.0}) {}
  explicit Profile(ProfileKind kind) : kind_(std::move(kind)) {}

  static Profile constant(double c) { return Profile(profile_kind::Constant{c}); }
  static Profile sin_sq(double omega, double phase = 0.0, double scale = 1.0) {
    return Profile(profile_kind::SinSq{scale, omega, phase});
  }
  static Profile cos_sq(double omega, double phase = 0.0, double scale = 1.0) {
    return Profile(profile_kind::CosSq{scale, omega, phase});
  }
  static Profile sin_first(double scale, double omega, double phase = 0.0,
                           double offset = 0.0) {
    return Profile(profile_kind::SinFirst{scale, omega, phase, offset});
  }
  static Profile cos_first(double scale, double omega, double phase = 0.0,
                           double offset = 0.0) {
    return Profile(profile_kind::CosFirst{scale, omega, phase, offset});
  }
  static Profile exp2(double a) { return Profile(profile_kind::Exp2{a}); }
  static Profile power_law(double c1, double c2, double q) {
    return Profile(profile_kind::PowerLaw{c1, c2, q});
  }
  static Profile square_of(Profile inner) {
    return Profile(profile_kind::SquareOf{
        std::make_shared<const Profile>(std::move(inner))});
  }
  // Wraps a profile in a Cheeger deformation with parameter s >= 0.  Nested
  // deformations flatten: Cheeger(Cheeger(p, s1), s2) == Cheeger(p, s1 + s2),
  // which is an algebraic identity of p/(1+sp).
  static Profile cheeger(Profile inner, double s) {
    if (!(s >= 0.0) || !std::isfinite(s))
      throw std::invalid_argument("cheeger: parameter s must be finite and >= 0");
    if (const auto* c = std::get_if<profile_kind::Cheeger>(&inner.kind_)) {
      return Profile(profile_kind::Cheeger{c->inner, c->s + s});
    }
    return Profile(profile_kind::Cheeger{
        std::make_shared<const Profile>(std::move(inner)), s});
  }
  static Profile user_table(double t0, double dt, std::vector<double> values) {
    if (!(dt > 0.0)) throw std::invalid_argument("user_table: dt must be > 0");
    if (values.size() < 6)
      throw std::invalid_argument("user_table: need at least 6 samples");
    return Profile(profile_kind::UserTable{
        t0, dt, std::make_shared<const std::vector<double>>(std::move(values))});
  }

  const ProfileKind& kind() const { return kind_; }

  Jet3 eval(double t) const;

  // True when any part of the profile is backed by sampled data, in which
  // case derivative accuracy is only as good as the interpolation and the
  // profile must not participate in root classification.
  bool verify_only() const;

  std::string kind_name() const;

 private:
  ProfileKind kind_;
};

namespace detail {

inline Jet3 eval_sin_sq(double scale, double omega, double phase, double t) {
  // sin^2(u) = (1 - cos 2u)/2; differentiate directly for accuracy.
  const double u = omega * t + phase;
  const double s = std::sin(u), c = std::cos(u);
  const double w = omega;
  return {scale * s * s, scale * 2.0 * s * c * w,
          scale * 2.0 * (c * c - s * s) * w * w,
          scale * -8.0 * s * c * w * w * w};
}

inline Jet3 eval_cos_sq(double scale, double omega, double phase, double t) {
  const double u = omega * t + phase;
  const double s = std::sin(u), c = std::cos(u);
  const double w = omega;
  return {scale * c * c, scale * -2.0 * s * c * w,
          scale * 2.0 * (s * s - c * c) * w * w,
          scale * 8.0 * s * c * w * w * w};
}

// Evaluates an interpolating polynomial through the 6 table nodes nearest t,
// in Newton form, using jet arithmetic so derivatives come out for free.
inline Jet3 eval_user_table(const profile_kind::UserTable& u, double t) {
  const auto& vals = *u.values;
  const int n = static_cast<int>(vals.size());
  const int stencil = 6;
  int i0 = static_cast<int>(std::floor((t - u.t0) / u.dt)) - stencil / 2 + 1;
  if (i0 < 0) i0 = 0;
  if (i0 > n - stencil) i0 = n - stencil;
  double x[stencil], c[stencil];
  for (int i = 0; i < stencil; ++i) {
    x[i] = u.t0 + (i0 + i) * u.dt;
    c[i] = vals[i0 + i];
  }
  // Divided differences in place: c[i] becomes the Newton coefficient.
  for (int j = 1; j < stencil; ++j)
    for (int i = stencil - 1; i >= j; --i)
      c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
  Jet3 tv = jet_variable(t);
  Jet3 acc = jet_constant(c[stencil - 1]);
  for (int i = stencil - 2; i >= 0; --i)
    acc = acc * (tv - jet_constant(x[i])) + jet_constant(c[i]);
  return acc;
}

}  // namespace detail

inline Jet3 Profile::eval(double t) const {
  using namespace profile_kind;
  return std::visit(
      [t](const auto& k) -> Jet3 {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return jet_constant(k.c);
        } else if constexpr (std::is_same_v<K, SinSq>) {
          return detail::eval_sin_sq(k.scale, k.omega, k.phase, t);
        } else if constexpr (std::is_same_v<K, CosSq>) {
          return detail::eval_cos_sq(k.scale, k.omega, k.phase, t);
        } else if constexpr (std::is_same_v<K, SinFirst>) {
          const double u = k.omega * t + k.phase;
          const double s = std::sin(u), c = std::cos(u), w = k.omega;
          return {k.offset + k.scale * s, k.scale * c * w,
                  -k.scale * s * w * w, -k.scale * c * w * w * w};
        } else if constexpr (std::is_same_v<K, CosFirst>) {
          const double u = k.omega * t + k.phase;
          const double s = std::sin(u), c = std::cos(u), w = k.omega;
          return {k.offset + k.scale * c, -k.scale * s * w,
                  -k.scale * c * w * w, k.scale * s * w * w * w};
        } else if constexpr (std::is_same_v<K, Exp2>) {
          const double e = std::exp(2.0 * k.a * t), a2 = 2.0 * k.a;
          return {e, a2 * e, a2 * a2 * e, a2 * a2 * a2 * e};
        } else if constexpr (std::is_same_v<K, PowerLaw>) {
          const double base = k.c2 + t, e = 2.0 * k.q;
          const double p = k.c1 * k.c1 * std::pow(base, e);
          return {p, p * e / base, p * e * (e - 1.0) / (base * base),
                  p * e * (e - 1.0) * (e - 2.0) / (base * base * base)};
        } else if constexpr (std::is_same_v<K, SquareOf>) {
          const Jet3 inner = k.inner->eval(t);
          return jet_mul(inner, inner);
        } else if constexpr (std::is_same_v<K, Cheeger>) {
          const Jet3 p = k.inner->eval(t);
          Jet3 denom = jet_constant(1.0) + k.s * p;
          return jet_div(p, denom);
        } else {
          static_assert(std::is_same_v<K, UserTable>);
          return detail::eval_user_table(k, t);
        }
      },
      kind_);
}

inline bool Profile::verify_only() const {
  using namespace profile_kind;
  return std::visit(
      [](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, UserTable>)
          return true;
        else if constexpr (std::is_same_v<K, SquareOf> ||
                           std::is_same_v<K, Cheeger>)
          return k.inner->verify_only();
        else
          return false;
      },
      kind_);
}

inline std::string Profile::kind_name() const {
  using namespace profile_kind;
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) return "constant";
        else if constexpr (std::is_same_v<K, SinSq>) return "sin_sq";
        else if constexpr (std::is_same_v<K, CosSq>) return "cos_sq";
        else if constexpr (std::is_same_v<K, SinFirst>) return "sin";
        else if constexpr (std::is_same_v<K, CosFirst>) return "cos";
        else if constexpr (std::is_same_v<K, Exp2>) return "exp2";
        else if constexpr (std::is_same_v<K, PowerLaw>) return "power_law";
        else if constexpr (std::is_same_v<K, SquareOf>) return "square_of";
        else if constexpr (std::is_same_v<K, Cheeger>)
          return "cheeger(" + k.inner->kind_name() + ")";
        else return "user_table";
      },
      kind_);
}

}  // namespace coh1
