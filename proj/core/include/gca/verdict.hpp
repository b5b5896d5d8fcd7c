#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace gca {

enum class Answer { Yes, No, Unknown };

inline std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

// YES/NO always carry evidence that can be re-checked; UNKNOWN carries the
// exhausted budget in `budget`.
struct Verdict {
  Answer answer = Answer::Unknown;
  nlohmann::json evidence = nlohmann::json::object();
  nlohmann::json budget = nlohmann::json::object();
  std::string reason;

  static Verdict yes(nlohmann::json ev, std::string why = {}) {
    return {Answer::Yes, std::move(ev), nlohmann::json::object(), std::move(why)};
  }
  static Verdict no(nlohmann::json ev, std::string why = {}) {
    return {Answer::No, std::move(ev), nlohmann::json::object(), std::move(why)};
  }
  static Verdict unknown(nlohmann::json used, std::string why) {
    return {Answer::Unknown, nlohmann::json::object(), std::move(used), std::move(why)};
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"answer", std::string(to_string(answer))}, {"evidence", evidence}};
    if (!budget.empty()) j["budgetUsed"] = budget;
    if (!reason.empty()) j["reason"] = reason;
    return j;
  }
};

}  // namespace gca
