#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semnet/network.hpp"

namespace semnet {

struct Emergence {
  int a = 0;
  int b = -1;  // -1 for a concept, otherwise the pair (a, b)
  std::uint64_t growth = 0;
};

// All concepts (or pairs) first seen in `year`, highest growth first, ties by id.
struct EmergenceYear {
  int year = 0;
  bool partial = false;  // window runs past the last data year
  std::vector<Emergence> ranked;
};

// Emergence year = first year with a nonzero count; growth = sum of counts
// over [year, year + window).
std::vector<EmergenceYear> emerging_concepts(const TemporalNetwork& net, int window = 5);

// Pairs whose first co-mention is at y0 while both concepts already occurred
// before y0.
std::vector<EmergenceYear> emerging_pairs(const TemporalNetwork& net, int window = 5);

std::uint64_t windowed_sum(std::span<const YearCount> history, int start, int window);

// CSV `year,rank,kind,names,growth,partial`; pair names are joined with " + ".
void write_trends_csv(std::ostream& out, const TemporalNetwork& net, const std::vector<EmergenceYear>& concepts,
                      const std::vector<EmergenceYear>& pairs, int top);

}  // namespace semnet
