#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "netzero/errors.hpp"

namespace netzero {

// Fixed order: serialization, confusion-matrix axes and argmax tie-breaks all
// rely on it.
enum class TargetLabel : int { NetZero = 0, Reduction = 1, None = 2 };

inline constexpr std::array<TargetLabel, 3> kAllTargetLabels = {
    TargetLabel::NetZero, TargetLabel::Reduction, TargetLabel::None};

inline std::string_view to_string(TargetLabel l) {
  switch (l) {
    case TargetLabel::NetZero: return "NET_ZERO";
    case TargetLabel::Reduction: return "REDUCTION";
    case TargetLabel::None: return "NONE";
  }
  return "NONE";
}

inline std::optional<TargetLabel> target_label_from_string(std::string_view s) {
  if (s == "NET_ZERO") return TargetLabel::NetZero;
  if (s == "REDUCTION") return TargetLabel::Reduction;
  if (s == "NONE") return TargetLabel::None;
  return std::nullopt;
}

inline TargetLabel parse_target_label(std::string_view s) {
  auto l = target_label_from_string(s);
  if (!l) throw InputError("not a target label: '" + std::string(s) + "'");
  return *l;
}

// Binary task: net zero and reduction collapse into TARGET.
enum class BinaryLabel : int { Target = 0, None = 1 };

inline std::string_view to_string(BinaryLabel l) {
  return l == BinaryLabel::Target ? "TARGET" : "NONE";
}

inline std::optional<BinaryLabel> binary_label_from_string(std::string_view s) {
  if (s == "TARGET") return BinaryLabel::Target;
  if (s == "NONE") return BinaryLabel::None;
  return std::nullopt;
}

inline BinaryLabel to_binary(TargetLabel l) {
  return l == TargetLabel::None ? BinaryLabel::None : BinaryLabel::Target;
}

enum class Provenance : int { Tracker = 0, NonTargetSource = 1 };

inline std::string_view to_string(Provenance p) {
  return p == Provenance::Tracker ? "TRACKER" : "NON_TARGET_SOURCE";
}

inline std::optional<Provenance> provenance_from_string(std::string_view s) {
  if (s == "TRACKER") return Provenance::Tracker;
  if (s == "NON_TARGET_SOURCE") return Provenance::NonTargetSource;
  return std::nullopt;
}

enum class ActorType : int { City = 0, Company = 1, Country = 2, Region = 3 };

inline std::string_view to_string(ActorType a) {
  switch (a) {
    case ActorType::City: return "city";
    case ActorType::Company: return "company";
    case ActorType::Country: return "country";
    case ActorType::Region: return "region";
  }
  return "company";
}

inline std::optional<ActorType> actor_type_from_string(std::string_view s) {
  if (s == "city") return ActorType::City;
  if (s == "company") return ActorType::Company;
  if (s == "country") return ActorType::Country;
  if (s == "region") return ActorType::Region;
  return std::nullopt;
}

}  // namespace netzero
