#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace adoption {

// Coarse universal-style part-of-speech classes.
enum class PosClass : std::uint8_t {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kPron,
  kDet,
  kAdp,
  kConj,
  kNum,
  kPrt,
  kX,
};

inline constexpr std::array<PosClass, 11> kAllPosClasses = {
    PosClass::kNoun, PosClass::kVerb, PosClass::kAdj,  PosClass::kAdv,
    PosClass::kPron, PosClass::kDet,  PosClass::kAdp,  PosClass::kConj,
    PosClass::kNum,  PosClass::kPrt,  PosClass::kX};

std::string_view to_string(PosClass cls);
std::optional<PosClass> parse_pos_class(std::string_view name);

}  // namespace adoption
