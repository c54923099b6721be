#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace seuguard::prop {

enum class Cmp { Le, Lt, Ge, Gt, Eq, Ne };

const char* cmp_text(Cmp c);
bool compare(Cmp c, int32_t lhs, int32_t rhs);

// Instantaneous form: the comparison holds for the newest output value.
struct Instant {
  Cmp cmp;
  int32_t bound;
};

// Windowed persistence: violated once the last n outputs are all outside
// [r_min, r_max].
struct Window {
  int32_t r_min;
  int32_t r_max;
  int n;
};

struct SafetySpec {
  std::string output_variable;
  std::variant<Instant, Window> form;
};

struct SpecParseResult {
  std::optional<SafetySpec> spec;
  std::string error;
};

// Grammar:
//   always <var> (<=|<|>=|>|==|!=) <int>
//   window <var> in ( <int> , <int> ) persist <n>
SpecParseResult parse_spec(std::string_view text);

std::string render(const SafetySpec& spec);

// Ring buffer of the most recent <= capacity output values.
class OutputBuffer {
 public:
  explicit OutputBuffer(int capacity);

  void append(int32_t value);
  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  int32_t newest() const;
  const std::vector<int32_t>& entries() const { return entries_; }

 private:
  int capacity_;
  std::vector<int32_t> entries_;  // oldest first
};

int buffer_capacity(const SafetySpec& spec);

// phi. Instant form requires a non-empty buffer (throws std::logic_error on
// an empty one); Window form is true until n entries accumulated.
bool eval_phi(const SafetySpec& spec, const OutputBuffer& buffer);

}  // namespace seuguard::prop
