#pragma once

#include <iosfwd>

#include "direach/graph.hpp"

namespace direach {

enum class RowFormat { list, hex };

/// One line per source, in source order: "s: v1 v2 ..." (ascending) or, for
/// hex, "s: 0x<digits>" with bit j = column j and ceil(n/4) digits, most
/// significant first.
void write_reach(std::ostream& out, const ReachResult& r, RowFormat fmt = RowFormat::list);

/// Reads either format back. `n` is the column count. Lines starting with '#'
/// are skipped.
ReachResult read_reach(std::istream& in, std::size_t n);

}  // namespace direach
