#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/dynamics.hpp"
#include "invlim/partitions.hpp"

namespace invlim {

// "[0,0,1]"
std::string format_rgs(const SetPartition& p);
// "{0,1}|{2}"
std::string format_blocks(const SetPartition& p);
// "{0,1}"
std::string format_block(const Block& block);
// "[1,2,1]"
std::string format_table(const Endofunction& map);

// Accepts either block notation or rgs notation. In block notation the
// ground size is max element + 1 unless `n` is given. Throws ParseError
// (with character position) on malformed text, ValidationError when the
// blocks do not form a partition, DimensionError when `n` disagrees.
SetPartition parse_partition(std::string_view text,
                             std::optional<std::size_t> n = std::nullopt);

Endofunction parse_endofunction(std::string_view text);

// "{0,1}" -> {0, 1}
Block parse_block(std::string_view text);

// One partition per line in block notation; blank lines and lines starting
// with '#' are skipped. ParseError positions are offsets into the file.
std::vector<SetPartition> parse_family(std::istream& in,
                                       std::optional<std::size_t> n =
                                           std::nullopt);

}  // namespace invlim
