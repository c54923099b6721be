#include "seuguard/property.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace seuguard::prop {

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Le: return "<=";
    case Cmp::Lt: return "<";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
    case Cmp::Eq: return "==";
    case Cmp::Ne: return "!=";
  }
  return "?";
}

bool compare(Cmp c, int32_t lhs, int32_t rhs) {
  switch (c) {
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Ge: return lhs >= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ne: return lhs != rhs;
  }
  return false;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(std::string_view word) {
    skip_ws();
    if (text.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }

  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      return std::string(text.substr(start, pos - start));
    }
    return std::nullopt;
  }

  std::optional<int32_t> integer() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      pos = start;
      return std::nullopt;
    }
    int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 4294967296LL) {
        pos = start;
        return std::nullopt;
      }
      ++pos;
    }
    if (neg) value = -value;
    if (value < INT32_MIN || value > INT32_MAX) {
      pos = start;
      return std::nullopt;
    }
    return static_cast<int32_t>(value);
  }

  std::optional<Cmp> comparison() {
    skip_ws();
    if (eat("<=")) return Cmp::Le;
    if (eat(">=")) return Cmp::Ge;
    if (eat("==")) return Cmp::Eq;
    if (eat("!=")) return Cmp::Ne;
    if (eat("<")) return Cmp::Lt;
    if (eat(">")) return Cmp::Gt;
    if (eat("=")) return Cmp::Eq;
    return std::nullopt;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

SpecParseResult fail(const std::string& msg) { return SpecParseResult{std::nullopt, msg}; }

}  // namespace

SpecParseResult parse_spec(std::string_view text) {
  Cursor c{text};
  if (c.eat("always")) {
    auto var = c.ident();
    if (!var) return fail("expected a variable name after 'always'");
    auto cmp = c.comparison();
    if (!cmp) return fail("expected a comparison operator");
    auto bound = c.integer();
    if (!bound) return fail("expected an integer bound");
    if (!c.done()) return fail("trailing input after property");
    SafetySpec spec;
    spec.output_variable = *var;
    spec.form = Instant{*cmp, *bound};
    return SpecParseResult{std::move(spec), ""};
  }
  if (c.eat("window")) {
    auto var = c.ident();
    if (!var) return fail("expected a variable name after 'window'");
    if (!c.eat("in")) return fail("expected 'in'");
    if (!c.eat("(")) return fail("expected '('");
    auto lo = c.integer();
    if (!lo) return fail("expected the lower range bound");
    if (!c.eat(",")) return fail("expected ','");
    auto hi = c.integer();
    if (!hi) return fail("expected the upper range bound");
    if (!c.eat(")")) return fail("expected ')'");
    if (!c.eat("persist")) return fail("expected 'persist'");
    auto n = c.integer();
    if (!n) return fail("expected the window length");
    if (!c.done()) return fail("trailing input after property");
    if (*lo >= *hi) return fail("window range requires r_min < r_max");
    if (*n < 1) return fail("window length must be at least 1");
    SafetySpec spec;
    spec.output_variable = *var;
    spec.form = Window{*lo, *hi, *n};
    return SpecParseResult{std::move(spec), ""};
  }
  return fail("property must start with 'always' or 'window'");
}

std::string render(const SafetySpec& spec) {
  std::ostringstream os;
  if (const auto* i = std::get_if<Instant>(&spec.form)) {
    os << spec.output_variable << " " << cmp_text(i->cmp) << " " << i->bound;
  } else {
    const auto& w = std::get<Window>(spec.form);
    os << spec.output_variable << " in (" << w.r_min << "," << w.r_max
       << ") persist " << w.n;
  }
  return os.str();
}

OutputBuffer::OutputBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::logic_error("OutputBuffer capacity must be >= 1");
  entries_.reserve(static_cast<std::size_t>(capacity));
}

void OutputBuffer::append(int32_t value) {
  if (static_cast<int>(entries_.size()) == capacity_)
    entries_.erase(entries_.begin());
  entries_.push_back(value);
}

int32_t OutputBuffer::newest() const {
  if (entries_.empty()) throw std::logic_error("OutputBuffer is empty");
  return entries_.back();
}

int buffer_capacity(const SafetySpec& spec) {
  if (const auto* w = std::get_if<Window>(&spec.form)) return w->n;
  return 1;
}

bool eval_phi(const SafetySpec& spec, const OutputBuffer& buffer) {
  if (const auto* i = std::get_if<Instant>(&spec.form))
    return compare(i->cmp, buffer.newest(), i->bound);
  const auto& w = std::get<Window>(spec.form);
  if (buffer.size() < w.n) return true;  // persistence not established yet
  for (int32_t v : buffer.entries())
    if (v >= w.r_min && v <= w.r_max) return true;
  return false;
}

}  // namespace seuguard::prop
