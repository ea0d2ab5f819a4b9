#pragma once

#include <string>
#include <utility>

#include "dq/verify.hpp"

namespace dq {

/** @brief {"rows", "cols", "entries": [[w, x, y, z, wi, xi, yi, zi], ...]} in row-major order. */
std::string render_matrix(const DQMatrix& m);
/** @brief Throws Parse on malformed text, a wrong entry count or non-finite values. */
DQMatrix parse_matrix(const std::string& text);

/** @brief A .dqr bundle: kind, named factors, block dims, spectra and flags. */
std::string render_result(DecompKind k, const AnyResult& r);
std::pair<DecompKind, AnyResult> parse_result(const std::string& text);

/** @brief Just the spectra section of a bundle (sigma, cs pairs or triples). */
std::string render_spectra(DecompKind k, const AnyResult& r);

std::string render_report(const VerificationReport& rep);
std::string format_report_table(const VerificationReport& rep);

/** @brief Throws Parse if the file cannot be read. */
std::string read_text(const std::string& path);
/** @brief Writes through a temporary file in the same directory and renames it into place. */
void write_atomic(const std::string& path, const std::string& content);

DQMatrix read_matrix(const std::string& path);

}  // namespace dq
