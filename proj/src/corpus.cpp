#include "semnet/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "semnet/error.hpp"

namespace semnet {

namespace {

Document parse_record(const std::string& line, std::size_t line_no, const std::string& source) {
  auto fail = [&](const std::string& why) {
    return Error(fmt::format("{}:{}: malformed record: {}", source, line_no, why));
  };
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  if (!obj.is_object()) throw fail("not an object");
  for (const char* key : {"id", "title", "abstract", "year"}) {
    if (!obj.contains(key)) throw fail(fmt::format("missing field '{}'", key));
  }
  if (obj.size() != 4) throw fail("unexpected extra fields");
  if (!obj["id"].is_string() || !obj["title"].is_string() || !obj["abstract"].is_string()) {
    throw fail("id, title and abstract must be strings");
  }
  if (!obj["year"].is_number_integer()) throw fail("year must be an integer");

  Document doc{obj["id"].get<std::string>(), obj["title"].get<std::string>(),
               obj["abstract"].get<std::string>(), obj["year"].get<int>()};
  if (doc.id.empty()) throw fail("empty id");
  if (doc.title.empty()) throw fail("empty title");
  return doc;
}

}  // namespace

std::vector<Document> parse_corpus(std::istream& in, const YearLimits& limits, const std::string& source) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    Document doc = parse_record(line, line_no, source);
    if (doc.year < limits.min_year || doc.year > limits.max_year) {
      throw Error(fmt::format("{}:{}: year {} outside [{}, {}]", source, line_no, doc.year, limits.min_year,
                              limits.max_year));
    }
    if (!seen.insert(doc.id).second) {
      throw Error(fmt::format("{}:{}: duplicate document id '{}'", source, line_no, doc.id));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path, const YearLimits& limits) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open corpus file '{}'", path.string()));
  return parse_corpus(in, limits, path.string());
}

std::string to_record_line(const Document& doc) {
  nlohmann::ordered_json obj;
  obj["id"] = doc.id;
  obj["title"] = doc.title;
  obj["abstract"] = doc.abstract;
  obj["year"] = doc.year;
  return obj.dump();
}

void write_corpus(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) out << to_record_line(doc) << '\n';
}

}  // namespace semnet
