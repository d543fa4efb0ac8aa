#pragma once

// Scaled Sturm sequences for a real symmetric tridiagonal matrix T with
// diagonal d_0..d_n-1 and squared couplings c_f = b_{f-1}^2:
//
//   P_{-1} = 0, P_0 = 1,
//   P_{f+1}(lambda) = (lambda - d_f) P_f(lambda) - c_f P_{f-1}(lambda),
//
// so P_f is det(lambda - T_f) for the leading f x f block. The number of sign
// agreements between consecutive terms of P_0..P_n equals the number of
// eigenvalues of T strictly below lambda.
//
// After every step the pair (P_f, P_{f+1}) is divided by the power of two that
// brings the larger of the two into [1/2, 1); the removed exponent is tracked
// separately. Power-of-two scaling is exact, so the scaled values carry the
// same rounding as an unscaled evaluation would, without overflow.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace shg {

template <typename Scalar>
struct ScaledValue {
  Scalar mantissa = 0;  // 0 or |mantissa| in [1/2, 1)
  long exponent = 0;

  Scalar value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
  int sign() const { return (mantissa > 0) - (mantissa < 0); }
  // log|value|; -inf for zero.
  Scalar log_abs() const {
    using std::log;
    return log(std::abs(mantissa)) + static_cast<Scalar>(exponent) * log(Scalar(2));
  }

  static ScaledValue from(Scalar x, long extra_exponent) {
    int e = 0;
    const Scalar m = std::frexp(x, &e);
    return {m, m == 0 ? 0 : extra_exponent + e};
  }
};

namespace detail {

// e such that x * 2^-e lies in [1/2, 1) for normal x.
template <typename Scalar>
inline int binary_exponent(Scalar x) {
  int e = 0;
  std::frexp(x, &e);
  return e;
}

template <>
inline int binary_exponent<double>(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  return static_cast<int>((bits >> 52) & 0x7ff) - 1022;
}

template <typename Scalar>
inline Scalar pow2(int e) {
  return std::ldexp(Scalar(1), e);
}

template <>
inline double pow2<double>(int e) {
  return std::bit_cast<double>(static_cast<std::uint64_t>(e + 1023) << 52);
}

template <typename Scalar>
inline Scalar rescale_factor(Scalar a, Scalar b, int& e) {
  using std::abs;
  e = std::clamp(binary_exponent(std::max(abs(a), abs(b))), -1021, 1021);
  return pow2<Scalar>(-e);
}

// Sign of P_{f+1} for the agreement count; an exact zero takes the sign
// opposite to its predecessor.
template <typename Scalar>
inline Scalar effective_sign(Scalar next, Scalar prev_sign) {
  return next > 0 ? Scalar(1) : (next < 0 ? Scalar(-1) : -prev_sign);
}

}  // namespace detail

// Full scaled sequence P_0..P_n at one lambda. `below` receives the count of
// eigenvalues strictly below lambda.
template <typename Scalar>
std::vector<ScaledValue<Scalar>> sturm_sequence(const Scalar* diag, const Scalar* offdiag_sq,
                                                int n, Scalar lambda, int* below = nullptr) {
  std::vector<ScaledValue<Scalar>> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back({Scalar(0.5), 1});

  Scalar prev = 0, cur = 1, cur_sign = 1;
  long exponent = 0;
  int agreements = 0;
  for (int f = 0; f < n; ++f) {
    const Scalar c = f > 0 ? offdiag_sq[f - 1] : Scalar(0);
    const Scalar next = (lambda - diag[f]) * cur - c * prev;
    const Scalar next_sign = detail::effective_sign(next, cur_sign);
    agreements += next_sign == cur_sign;
    cur_sign = next_sign;

    int e = 0;
    const Scalar scale = detail::rescale_factor(next, cur, e);
    prev = cur * scale;
    cur = next * scale;
    exponent += e;
    out.push_back(ScaledValue<Scalar>::from(cur, exponent));
  }
  if (below) *below = agreements;
  return out;
}

// Sturm counts for `Lanes` independent shifts evaluated in lock step; the
// lanes share the matrix and interleave for instruction-level parallelism.
template <typename Scalar, int Lanes>
void sturm_count_lanes(const Scalar* diag, const Scalar* offdiag_sq, int n,
                       const Scalar* lambdas, int* counts) {
  Scalar prev[Lanes], cur[Lanes], sign[Lanes];
  int agree[Lanes];
  for (int l = 0; l < Lanes; ++l) {
    prev[l] = 0;
    cur[l] = 1;
    sign[l] = 1;
    agree[l] = 0;
  }
  for (int f = 0; f < n; ++f) {
    const Scalar c = f > 0 ? offdiag_sq[f - 1] : Scalar(0);
    const Scalar d = diag[f];
    for (int l = 0; l < Lanes; ++l) {
      const Scalar next = (lambdas[l] - d) * cur[l] - c * prev[l];
      const Scalar next_sign = detail::effective_sign(next, sign[l]);
      agree[l] += next_sign == sign[l];
      sign[l] = next_sign;
      int e = 0;
      const Scalar scale = detail::rescale_factor(next, cur[l], e);
      prev[l] = cur[l] * scale;
      cur[l] = next * scale;
    }
  }
  for (int l = 0; l < Lanes; ++l) counts[l] = agree[l];
}

template <typename Scalar>
int sturm_count(const Scalar* diag, const Scalar* offdiag_sq, int n, Scalar lambda) {
  int count = 0;
  sturm_count_lanes<Scalar, 1>(diag, offdiag_sq, n, &lambda, &count);
  return count;
}

}  // namespace shg
