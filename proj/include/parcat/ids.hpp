#pragma once

#include <compare>
#include <cstddef>
#include <functional>

namespace parcat {

enum class ObjId : int {};
enum class MorId : int {};

constexpr int idx(ObjId o) { return static_cast<int>(o); }
constexpr int idx(MorId m) { return static_cast<int>(m); }
constexpr ObjId obj_at(int i) { return ObjId{i}; }
constexpr MorId mor_at(int i) { return MorId{i}; }

inline constexpr ObjId kNoObj{-1};
inline constexpr MorId kNoMor{-1};

constexpr bool valid(ObjId o) { return idx(o) >= 0; }
constexpr bool valid(MorId m) { return idx(m) >= 0; }

}  // namespace parcat
