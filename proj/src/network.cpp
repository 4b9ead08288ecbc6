#include "semnet/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"

namespace semnet {

TemporalNetwork::TemporalNetwork(std::vector<std::string> names, int first_year, int last_year)
    : names_(std::move(names)), first_year_(first_year), last_year_(last_year), concepts_(names_.size()) {
  if (first_year > last_year) throw Error("network year range is empty");
}

void TemporalNetwork::check_concept(int c) const {
  if (c < 0 || c >= size()) throw Error(fmt::format("concept id {} out of range [0, {})", c, size()));
}

void TemporalNetwork::bump(std::vector<YearCount>& history, int year, std::uint32_t count) {
  auto it = std::lower_bound(history.begin(), history.end(), year,
                             [](const YearCount& yc, int y) { return yc.year < y; });
  if (it != history.end() && it->year == year) {
    it->count += count;
  } else {
    history.insert(it, {year, count});
  }
}

void TemporalNetwork::add_document(int year, std::span<const int> concepts) {
  for (std::size_t a = 0; a < concepts.size(); ++a) {
    check_concept(concepts[a]);
    bump(concepts_[concepts[a]], year, 1);
    for (std::size_t b = a + 1; b < concepts.size(); ++b) {
      if (concepts[a] == concepts[b]) throw Error("document concept list contains duplicates");
      bump(edges_[ordered_pair(concepts[a], concepts[b])], year, 1);
    }
  }
}

void TemporalNetwork::add_pair_count(int i, int j, int year, std::uint32_t count) {
  check_concept(i);
  check_concept(j);
  if (i == j) throw Error(fmt::format("self pair ({}, {})", i, j));
  if (count == 0) return;
  bump(edges_[ordered_pair(i, j)], year, count);
}

void TemporalNetwork::add_concept_count(int c, int year, std::uint32_t count) {
  check_concept(c);
  if (count == 0) return;
  bump(concepts_[c], year, count);
}

std::span<const YearCount> TemporalNetwork::pair_history(int i, int j) const {
  auto it = edges_.find(ordered_pair(i, j));
  if (it == edges_.end()) return {};
  return it->second;
}

namespace {

std::uint64_t sum_through(std::span<const YearCount> history, int year) {
  std::uint64_t total = 0;
  for (const auto& yc : history) {
    if (yc.year > year) break;
    total += yc.count;
  }
  return total;
}

}  // namespace

std::uint64_t TemporalNetwork::pair_count_through(int i, int j, int year) const {
  return sum_through(pair_history(i, j), year);
}

std::uint64_t TemporalNetwork::concept_count_through(int c, int year) const {
  return sum_through(concepts_.at(c), year);
}

std::uint64_t TemporalNetwork::concept_total(int c) const {
  std::uint64_t total = 0;
  for (const auto& yc : concepts_.at(c)) total += yc.count;
  return total;
}

std::optional<int> TemporalNetwork::first_connection_year(int i, int j) const {
  auto h = pair_history(i, j);
  if (h.empty()) return std::nullopt;
  return h.front().year;
}

std::optional<int> TemporalNetwork::first_occurrence_year(int c) const {
  const auto& h = concepts_.at(c);
  if (h.empty()) return std::nullopt;
  return h.front().year;
}

TemporalNetwork build_network(std::span<const Document> corpus, const ConceptVocabulary& vocab,
                              unsigned threads) {
  if (vocab.empty()) throw Error("cannot build a network with an empty vocabulary");
  if (corpus.empty()) throw Error("cannot build a network from an empty corpus");
  int first = corpus.front().year;
  int last = corpus.front().year;
  for (const auto& d : corpus) {
    first = std::min(first, d.year);
    last = std::max(last, d.year);
  }
  std::vector<std::vector<int>> matches(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t k) { matches[k] = match_concepts(corpus[k], vocab); });

  TemporalNetwork net(vocab.canonical_names(), first, last);
  for (std::size_t k = 0; k < corpus.size(); ++k) net.add_document(corpus[k].year, matches[k]);
  return net;
}

Snapshot::Snapshot(int year, std::vector<std::vector<Neighbor>> rows, std::vector<std::uint64_t> occurrences)
    : year_(year), rows_(std::move(rows)), occurrences_(std::move(occurrences)) {}

std::uint64_t Snapshot::weight(int i, int j) const {
  const auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const Neighbor& nb, int id) { return nb.id < id; });
  return (it != row.end() && it->id == j) ? it->weight : 0;
}

std::size_t Snapshot::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : rows_) total += row.size();
  return total / 2;
}

Snapshot snapshot(const TemporalNetwork& net, int year) {
  const int n = net.size();
  std::vector<std::vector<Neighbor>> rows(n);
  for (const auto& [pair, history] : net.edges()) {
    const auto w = sum_through(history, year);
    if (w == 0) continue;
    rows[pair.first].push_back({pair.second, w});
    rows[pair.second].push_back({pair.first, w});
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
  std::vector<std::uint64_t> occ(n);
  for (int c = 0; c < n; ++c) occ[c] = net.concept_count_through(c, year);
  return Snapshot(year, std::move(rows), std::move(occ));
}

void write_network(std::ostream& out, const TemporalNetwork& net) {
  out << "semnet v1 " << net.size() << '\n';
  out << "years\t" << net.first_year() << '\t' << net.last_year() << '\n';
  for (int c = 0; c < net.size(); ++c) out << '#' << c << '\t' << net.names()[c] << '\n';
  for (int c = 0; c < net.size(); ++c) {
    for (const auto& yc : net.concept_history(c)) out << "occ\t" << c << '\t' << yc.year << '\t' << yc.count << '\n';
  }
  for (const auto& [pair, history] : net.edges()) {
    for (const auto& yc : history) {
      out << pair.first << '\t' << pair.second << '\t' << yc.year << '\t' << yc.count << '\n';
    }
  }
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <class T>
T parse_number(std::string_view s, const std::string& where) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(fmt::format("{}: bad number '{}'", where, s));
  return value;
}

}  // namespace

TemporalNetwork read_network(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto where = [&] { return fmt::format("{}:{}", source, line_no); };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("## ", 0) == 0 || line.empty()) continue;
      return true;
    }
    return false;
  };

  if (!next_line() || line.rfind("semnet v1 ", 0) != 0) throw Error(where() + ": missing 'semnet v1' header");
  const int n = parse_number<int>(std::string_view(line).substr(10), where());
  if (!next_line()) throw Error(where() + ": missing years line");
  auto years = split_tabs(line);
  if (years.size() != 3 || years[0] != "years") throw Error(where() + ": malformed years line");
  const int first = parse_number<int>(years[1], where());
  const int last = parse_number<int>(years[2], where());

  std::vector<std::string> names(n);
  for (int c = 0; c < n; ++c) {
    if (!next_line() || line.empty() || line.front() != '#') throw Error(where() + ": missing vocabulary echo");
    auto fields = split_tabs(std::string_view(line).substr(1));
    if (fields.size() != 2 || parse_number<int>(fields[0], where()) != c) {
      throw Error(where() + ": malformed vocabulary echo");
    }
    names[c] = std::string(fields[1]);
  }
  TemporalNetwork net(std::move(names), first, last);
  std::pair<int, int> prev_pair{-1, -1};
  int prev_year = 0;
  while (next_line()) {
    auto f = split_tabs(line);
    if (f.size() != 4) throw Error(where() + ": expected 4 tab-separated fields");
    if (f[0] == "occ") {
      net.add_concept_count(parse_number<int>(f[1], where()), parse_number<int>(f[2], where()),
                            parse_number<std::uint32_t>(f[3], where()));
      continue;
    }
    const int i = parse_number<int>(f[0], where());
    const int j = parse_number<int>(f[1], where());
    const int year = parse_number<int>(f[2], where());
    if (i >= j) throw Error(where() + ": event rows need i < j");
    const std::pair<int, int> pr{i, j};
    if (pr < prev_pair || (pr == prev_pair && year <= prev_year)) {
      throw Error(where() + ": event rows must be sorted by (i, j, year)");
    }
    prev_pair = pr;
    prev_year = year;
    net.add_pair_count(i, j, year, parse_number<std::uint32_t>(f[3], where()));
  }
  return net;
}

TemporalNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open network file '{}'", path.string()));
  return read_network(in, path.string());
}

}  // namespace semnet
