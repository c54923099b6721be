#include "seuguard/verdict.hpp"

namespace seuguard::engine {

const char* trigger_text(Trigger t) {
  switch (t) {
    case Trigger::NondetAnywhere: return "nondet";
    case Trigger::FirstUse: return "first-use";
    case Trigger::Disabled: return "disabled";
  }
  return "?";
}

const char* classification_text(Classification c) {
  switch (c) {
    case Classification::NonCrv: return "non-crv";
    case Classification::Crv: return "crv";
    case Classification::Unknown: return "unknown";
  }
  return "?";
}

const char* direction_text(Direction d) {
  return d == Direction::FaultIntroducing ? "fault-introducing" : "fault-masking";
}

}  // namespace seuguard::engine
