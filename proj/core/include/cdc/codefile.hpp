#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "cdc/subspace.hpp"

namespace cdc {

// Plain-text code files. Header "CDC q v k N d" or "RMC q a b N d u", then N
// codewords, each as k (resp. a) rows of v (resp. b) single digit characters,
// one blank line between codewords, codewords in canonical sorted order.
// Single-character entries restrict the format to q <= 9.
using AnyCode = std::variant<CDCCode, RankCode>;

std::string to_code_file(const CDCCode& code);
std::string to_code_file(const RankCode& code);
std::string to_code_file(const AnyCode& code);

// Throws ParseError (with 1-based line numbers) on malformed input, duplicate
// canonical bases, or rank-deficient subspace rows; BudgetError when the
// declared word count exceeds max_words. Non-canonical (but full-rank) bases
// of subspace words are accepted and canonicalized.
AnyCode parse_code_file(const std::string& text, uint64_t max_words = uint64_t{1} << 22);

void write_code_file(const std::string& path, const AnyCode& code);
AnyCode read_code_file(const std::string& path, uint64_t max_words = uint64_t{1} << 22);

}  // namespace cdc
