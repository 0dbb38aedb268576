#pragma once

#include <cstddef>
#include <vector>

namespace gcx {

// Sign of the permutation p (p[i] is the image of i), by cycle decomposition.
inline int permutation_sign(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return inv;
}

// Sign of the permutation that stably sorts keys; 0 if two keys are equal.
template <class T>
int sorting_sign(const std::vector<T>& keys) {
    int inversions = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            if (keys[i] == keys[j]) return 0;
            if (keys[j] < keys[i]) ++inversions;
        }
    return inversions % 2 ? -1 : 1;
}

}  // namespace gcx
