#pragma once

// Scalar backends shared by every dense kernel: IEEE double and exact GMP
// rationals. Eigen containers are used for both.

#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace herd {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

enum class Backend { kExact, kFloat };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view text);

template <typename Scalar>
inline constexpr bool kIsExact = std::is_same_v<Scalar, Rational>;

template <typename Scalar>
constexpr Backend backend_of() {
  return kIsExact<Scalar> ? Backend::kExact : Backend::kFloat;
}

/// Exact conversion from double (every finite double is a dyadic rational).
/// Throws NumericError for inf/nan.
Rational to_rational(double value);

template <typename To, typename From>
To scalar_cast(const From& value) {
  if constexpr (std::is_same_v<To, From>) {
    return value;
  } else if constexpr (std::is_same_v<To, double>) {
    return value.template convert_to<double>();
  } else {
    return to_rational(value);
  }
}

template <typename To, typename From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = scalar_cast<To>(m(i, j));
  return out;
}

template <typename To, typename From>
Vector<To> vector_cast(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = scalar_cast<To>(v(i));
  return out;
}

template <typename Scalar>
int sign_of(const Scalar& v) {
  return (v > 0) - (v < 0);
}

template <typename Scalar>
Scalar abs_of(const Scalar& v) {
  return v < 0 ? Scalar(-v) : v;
}

/// Parses "7", "-3/4", "0.25", "1e-3" into an exact rational. Decimal
/// notation is converted exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

/// Shortest round-trip text for doubles, format_rational for rationals.
std::string format_scalar(double value);
std::string format_scalar(const Rational& value);

}  // namespace herd
