#include "semnet/trends.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "semnet/error.hpp"

namespace semnet {

std::uint64_t windowed_sum(std::span<const YearCount> history, int start, int window) {
  std::uint64_t total = 0;
  for (const auto& yc : history) {
    if (yc.year >= start && yc.year < start + window) total += yc.count;
  }
  return total;
}

namespace {

std::optional<int> first_nonzero(std::span<const YearCount> history) {
  for (const auto& yc : history) {
    if (yc.count > 0) return yc.year;
  }
  return std::nullopt;
}

std::vector<EmergenceYear> finish(std::map<int, std::vector<Emergence>> by_year, const TemporalNetwork& net,
                                  int window) {
  std::vector<EmergenceYear> out;
  for (auto& [year, list] : by_year) {
    std::sort(list.begin(), list.end(), [](const Emergence& x, const Emergence& y) {
      if (x.growth != y.growth) return x.growth > y.growth;
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    out.push_back({year, year + window - 1 > net.last_year(), std::move(list)});
  }
  return out;
}

}  // namespace

std::vector<EmergenceYear> emerging_concepts(const TemporalNetwork& net, int window) {
  if (window < 1) throw Error("trend window must be at least 1");
  std::map<int, std::vector<Emergence>> by_year;
  for (int c = 0; c < net.size(); ++c) {
    const auto history = net.concept_history(c);
    const auto y0 = first_nonzero(history);
    if (!y0) continue;
    by_year[*y0].push_back({c, -1, windowed_sum(history, *y0, window)});
  }
  return finish(std::move(by_year), net, window);
}

std::vector<EmergenceYear> emerging_pairs(const TemporalNetwork& net, int window) {
  if (window < 1) throw Error("trend window must be at least 1");
  std::vector<std::optional<int>> born(net.size());
  for (int c = 0; c < net.size(); ++c) born[c] = first_nonzero(net.concept_history(c));
  std::map<int, std::vector<Emergence>> by_year;
  for (const auto& [pair, history] : net.edges()) {
    const auto y0 = first_nonzero(history);
    if (!y0) continue;
    const auto& ba = born[pair.first];
    const auto& bb = born[pair.second];
    if (!ba || !bb || *ba >= *y0 || *bb >= *y0) continue;
    by_year[*y0].push_back({pair.first, pair.second, windowed_sum(history, *y0, window)});
  }
  return finish(std::move(by_year), net, window);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

void write_trends_csv(std::ostream& out, const TemporalNetwork& net, const std::vector<EmergenceYear>& concepts,
                      const std::vector<EmergenceYear>& pairs, int top) {
  out << "year,rank,kind,names,growth,partial\n";
  std::map<int, std::pair<const EmergenceYear*, const EmergenceYear*>> years;
  for (const auto& e : concepts) years[e.year].first = &e;
  for (const auto& e : pairs) years[e.year].second = &e;
  const auto& names = net.names();
  for (const auto& [year, both] : years) {
    for (const EmergenceYear* group : {both.first, both.second}) {
      if (group == nullptr) continue;
      const int limit = std::min<int>(top, static_cast<int>(group->ranked.size()));
      for (int r = 0; r < limit; ++r) {
        const auto& e = group->ranked[r];
        const bool pair = e.b >= 0;
        const std::string label = pair ? names[e.a] + " + " + names[e.b] : names[e.a];
        out << fmt::format("{},{},{},{},{},{}\n", year, r + 1, pair ? "pair" : "concept", csv_field(label), e.growth,
                           group->partial ? 1 : 0);
      }
    }
  }
}

}  // namespace semnet
