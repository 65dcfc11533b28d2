#include "walkent/family_spec.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace walkent {

namespace {

constexpr std::string_view kGrammar =
    "kks(c,m) | complete(c) | cycle(k) | path(k) | spider(d,l) | "
    "spidercycle(d,l,k) | spidertorus(d,l,k1,k2) | cart(spec,spec) | "
    "tensor(spec,spec)";

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Graph parse() {
    Graph g = spec();
    skip_ws();
    if (pos_ != text_.size())
      fail("spec", "unexpected trailing input '" +
                       std::string(text_.substr(pos_)) + "'");
    return g;
  }

private:
  [[noreturn]] void fail(std::string_view production, const std::string& what) {
    throw FamilySpecError("malformed graph spec in production '" +
                          std::string(production) + "': " + what +
                          " (grammar: spec := " + std::string(kGrammar) + ")");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c, std::string_view production) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(production, std::string("expected '") + c + "' at offset " +
                           std::to_string(pos_));
    ++pos_;
  }

  std::string name() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer(std::string_view production) {
    skip_ws();
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first)
      fail(production, "expected an integer at offset " + std::to_string(pos_));
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::vector<int> integers(std::string_view production, std::size_t count) {
    std::vector<int> out;
    expect('(', production);
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) expect(',', production);
      out.push_back(integer(production));
    }
    expect(')', production);
    return out;
  }

  template <typename Build>
  Graph build(std::string_view production, Build&& make) {
    try {
      return make();
    } catch (const FamilySpecError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(production, e.what());
    }
  }

  Graph spec() {
    const std::string head = name();
    if (head == "kks") {
      auto a = integers("kks(c,m)", 2);
      return build("kks(c,m)", [&] { return kks_graph(a[0], a[1]); });
    }
    if (head == "complete") {
      auto a = integers("complete(c)", 1);
      return build("complete(c)", [&] { return complete_graph(a[0]); });
    }
    if (head == "cycle") {
      auto a = integers("cycle(k)", 1);
      return build("cycle(k)", [&] { return cycle_graph(a[0]); });
    }
    if (head == "path") {
      auto a = integers("path(k)", 1);
      return build("path(k)", [&] { return path_graph(a[0]); });
    }
    if (head == "spider") {
      auto a = integers("spider(d,l)", 2);
      return build("spider(d,l)", [&] { return spider(a[0], a[1]); });
    }
    if (head == "spidercycle") {
      auto a = integers("spidercycle(d,l,k)", 3);
      return build("spidercycle(d,l,k)",
                   [&] { return spider_cycle(a[0], a[1], a[2]); });
    }
    if (head == "spidertorus") {
      auto a = integers("spidertorus(d,l,k1,k2)", 4);
      return build("spidertorus(d,l,k1,k2)",
                   [&] { return spider_torus(a[0], a[1], a[2], a[3]); });
    }
    if (head == "cart" || head == "tensor") {
      const std::string production = head + "(spec,spec)";
      expect('(', production);
      Graph left = spec();
      expect(',', production);
      Graph right = spec();
      expect(')', production);
      return head == "cart" ? cartesian_product(left, right)
                            : tensor_product(left, right);
    }
    fail("spec", head.empty() ? "expected a family name at offset " +
                                    std::to_string(pos_)
                              : "unknown family '" + head + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Graph parse_family(std::string_view spec) { return Parser(spec).parse(); }

std::string_view family_grammar() { return kGrammar; }

} // namespace walkent
