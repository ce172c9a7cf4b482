#include "invlim/text.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

namespace {

template <typename Range>
std::string join(const Range& values, char open, char close) {
  std::string out(1, open);
  bool first = true;
  for (std::size_t v : values) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += close;
  return out;
}

// Minimal cursor over the input; whitespace between tokens is ignored.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (static_cast<std::size_t>(-1) - digit) / 10) {
        pos_ = start;
        fail("number too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected a non-negative integer");
    return value;
  }

  // Comma separated numbers up to `close`; the opening bracket is consumed
  // by the caller.
  std::vector<std::size_t> list(char close) {
    std::vector<std::size_t> out;
    if (accept(close)) return out;
    do {
      out.push_back(number());
    } while (accept(','));
    expect(close);
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, base_ + pos_);
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

SetPartition parse_partition_at(std::string_view text,
                                std::optional<std::size_t> n,
                                std::size_t base) {
  Cursor cur(text, base);
  SetPartition result = SetPartition::one_block(1);
  if (cur.accept('[')) {
    std::vector<std::size_t> rgs = cur.list(']');
    if (rgs.empty()) cur.fail("empty partition");
    if (!cur.at_end()) cur.fail("trailing characters");
    result = SetPartition::from_rgs(std::move(rgs));
  } else if (cur.peek() == '{') {
    std::vector<Block> blocks;
    std::size_t max_element = 0;
    do {
      cur.expect('{');
      Block block = cur.list('}');
      for (std::size_t e : block) max_element = std::max(max_element, e);
      blocks.push_back(std::move(block));
    } while (cur.accept('|'));
    if (!cur.at_end()) cur.fail("expected '|' or end of partition");
    result = SetPartition::from_blocks(n.value_or(max_element + 1), blocks);
  } else {
    cur.fail("expected '[' or '{' to start a partition");
  }
  if (n && result.size() != *n) {
    throw DimensionError("partition has n=" + std::to_string(result.size()) +
                         ", expected n=" + std::to_string(*n));
  }
  return result;
}

}  // namespace

std::string format_rgs(const SetPartition& p) { return join(p.rgs(), '[', ']'); }

std::string format_block(const Block& block) { return join(block, '{', '}'); }

std::string format_blocks(const SetPartition& p) {
  std::string out;
  for (const Block& b : p.blocks()) {
    if (!out.empty()) out += '|';
    out += format_block(b);
  }
  return out;
}

std::string format_table(const Endofunction& map) {
  return join(map.table(), '[', ']');
}

SetPartition parse_partition(std::string_view text,
                             std::optional<std::size_t> n) {
  return parse_partition_at(text, n, 0);
}

Endofunction parse_endofunction(std::string_view text) {
  Cursor cur(text, 0);
  cur.expect('[');
  std::vector<std::size_t> table = cur.list(']');
  if (!cur.at_end()) cur.fail("trailing characters");
  if (table.empty()) throw EmptyGroundSetError();
  return Endofunction(std::move(table));
}

Block parse_block(std::string_view text) {
  Cursor cur(text, 0);
  cur.expect('{');
  Block block = cur.list('}');
  if (!cur.at_end()) cur.fail("trailing characters");
  return block;
}

std::vector<SetPartition> parse_family(std::istream& in,
                                       std::optional<std::size_t> n) {
  std::vector<SetPartition> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t base = offset;
    offset += line.size() + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    SetPartition p = parse_partition_at(line, n, base);
    if (!n) n = p.size();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace invlim
