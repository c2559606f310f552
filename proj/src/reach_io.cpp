#include "direach/reach_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace direach {

namespace {

constexpr char kHex[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void write_reach(std::ostream& out, const ReachResult& r, RowFormat fmt) {
  const std::size_t n = r.rows.cols();
  const std::size_t digits = (n + 3) / 4;
  for (std::size_t i = 0; i < r.sources.size(); ++i) {
    out << r.sources[i] << ':';
    if (fmt == RowFormat::list) {
      r.rows.for_each_in_row(i, [&](std::size_t v) { out << ' ' << v; });
    } else {
      std::string hex(digits, '0');
      for (std::size_t d = 0; d < digits; ++d) {
        unsigned nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) {
          const std::size_t col = d * 4 + b;
          if (col < n && r.rows.test(i, col)) nibble |= 1u << b;
        }
        hex[digits - 1 - d] = kHex[nibble];
      }
      out << " 0x" << hex;
    }
    out << '\n';
  }
}

ReachResult read_reach(std::istream& in, std::size_t n) {
  std::vector<Vertex> ids;
  std::vector<std::vector<std::size_t>> cols;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("missing ':' at line " + std::to_string(lineno));
    }
    unsigned long long src = 0;
    try {
      src = std::stoull(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError("malformed source at line " + std::to_string(lineno));
    }
    if (src >= n) throw ParseError("vertex id out of range at line " + std::to_string(lineno));
    ids.push_back(static_cast<Vertex>(src));
    std::vector<std::size_t>& row = cols.emplace_back();
    std::istringstream ss(line.substr(colon + 1));
    std::string tok;
    while (ss >> tok) {
      if (tok.starts_with("0x")) {
        const std::string digits = tok.substr(2);
        if (digits.size() != (n + 3) / 4) {
          throw ParseError("hex row width mismatch at line " + std::to_string(lineno));
        }
        for (std::size_t d = 0; d < digits.size(); ++d) {
          const int val = hex_value(digits[digits.size() - 1 - d]);
          if (val < 0) throw ParseError("bad hex digit at line " + std::to_string(lineno));
          for (std::size_t b = 0; b < 4; ++b) {
            if (!(val >> b & 1)) continue;
            const std::size_t col = d * 4 + b;
            if (col >= n) throw ParseError("hex bit past n at line " + std::to_string(lineno));
            row.push_back(col);
          }
        }
      } else {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
          v = std::stoull(tok, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != tok.size()) {
          throw ParseError("malformed entry at line " + std::to_string(lineno));
        }
        if (v >= n) throw ParseError("vertex id out of range at line " + std::to_string(lineno));
        row.push_back(v);
      }
    }
  }
  SourceSet s;
  try {
    s = SourceSet(ids, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  BitMatrix rows(ids.size(), n);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t c : cols[i]) rows.set(i, c);
  }
  return {std::move(s), std::move(rows)};
}

}  // namespace direach
