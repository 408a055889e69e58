#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saw/saw_engine.hpp"

namespace testing {

inline bool same(const std::vector<saw::BigCount>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != saw::BigCount(b[i])) return false;
    }
    return true;
}

inline std::string show(const std::vector<saw::BigCount>& a) {
    std::string s;
    for (const auto& x : a) s += x.str() + " ";
    return s;
}

inline std::string show(const std::vector<std::uint64_t>& a) {
    std::string s;
    for (auto x : a) s += std::to_string(x) + " ";
    return s;
}

}  // namespace testing
