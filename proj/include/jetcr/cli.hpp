#pragma once

#include "jetcr/equivalence.hpp"
#include "jetcr/structure.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetcr::cli {

using Json = nlohmann::ordered_json;

// Malformed input file, located by line and, when it concerns one term, by term index.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& file, int line, std::optional<int> term, const std::string& message);
  int line() const noexcept { return line_; }
  std::optional<int> term() const noexcept { return term_; }

private:
  int line_;
  std::optional<int> term_;
};

// Parsed JSON document with the source line of every value, keyed by JSON pointer.
struct Document {
  std::string file;
  Json root;
  std::map<std::string, int> lines;

  static Document parse(const std::string& text, const std::string& file = "<input>");
  static Document load(const std::string& path);

  int line_of(const std::string& pointer) const;
  [[noreturn]] void fail(const std::string& pointer, const std::string& message,
                         std::optional<int> term = std::nullopt) const;
};

// {"exponents": {...}, "coefficient": "p/q" | {"re": "p/q", "im": "r/s"}} records.
Json coefficient_to_json(const Gaussian& c);
Gaussian coefficient_from_json(const Json& j);
Json jet_to_json(const Jet& a);
// {"order": K, "terms": [...]} over `alphabet`.
Jet jet_from_json(const Json& j, const AlphabetPtr& alphabet);

// Term list at `pointer` in `doc`; terms above `order` are counted in `dropped`.
Jet parse_terms(const Document& doc, const std::string& pointer, const AlphabetPtr& alphabet, int order,
                int* dropped = nullptr);

struct GermFile {
  StructureGerm germ;
  std::vector<std::string> warnings;
};
GermFile parse_germ(const Document& doc, std::optional<int> order);

struct HFile {
  Jet h;  // over {"xi"}
  std::vector<std::string> warnings;
};
HFile parse_h(const Document& doc, std::optional<int> order);

// f_1..f_nu and g over central_map_alphabet(source layout).
struct MapFile {
  std::vector<Jet> f;
  Jet g;
};
MapFile parse_map(const Document& doc, const GermLayout& source, int order);

// Entry point shared by the executable and the tests. Returns the exit status:
// 0 success, 1 parse error, 2 precondition violation, 3 invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jetcr::cli
