#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dq/ppsvd.hpp"
#include "dq/rsvd.hpp"

namespace dq {

enum class DecompKind { qr, svd, gsvd1, gsvd2, rsvd1, rsvd2, ppsvd };

const char* to_string(DecompKind k);
/** @brief Throws Parse on an unknown name. */
DecompKind parse_kind(const std::string& name);
/** @brief Number of input matrices the kind consumes (1, 2 or 3). */
std::size_t input_count(DecompKind k);

using AnyResult = std::variant<QrResult, SvdResult, GsvdResult, RsvdResult, PpsvdResult>;

/** @brief Runs the decomposition of the given kind; inputs.size() must equal input_count. */
AnyResult decompose(DecompKind k, const std::vector<DQMatrix>& inputs, const ToleranceConfig& tol = {});

struct Check {
  std::string name;
  FrobPair residual;
  FrobPair threshold;
  bool passed = false;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool overall = true;

  void add(std::string name, FrobPair residual, FrobPair threshold);
  void add_flag(std::string name, bool ok);
  void merge(const VerificationReport& other);
};

/**
 * @brief Throws DimensionMismatch when the inputs or the result's factors do
 * not fit together. verify_decomposition reports the same problem as a failed
 * "shapes" check instead.
 */
void check_shapes(DecompKind k, const std::vector<DQMatrix>& inputs, const AnyResult& result);

VerificationReport verify_decomposition(DecompKind k, const std::vector<DQMatrix>& inputs, const AnyResult& result,
                                        const ToleranceConfig& tol = {});

/** @brief Singular values of a quaternion matrix through LAPACK on the complex embedding, descending. */
std::vector<double> oracle_singular_values(const QMatrix& q);

/** @brief Compares product_svd_from_ppsvd against dqsvd of the explicitly formed product. */
VerificationReport cross_check_ppsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const PpsvdResult& r,
                                     const ToleranceConfig& tol = {});

/** @brief Deviation of two spectra padded with zeros to length n and sorted descending. */
FrobPair spectrum_deviation(std::vector<DualNumber> x, std::vector<DualNumber> y, std::size_t n);

}  // namespace dq
