#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "vlcode/words.hpp"

namespace vlcode {

/*
 * String difference w (-) z:
 *   s       if w = zs with s nonempty,
 *   lambda  if z = ws,
 *   w       otherwise.
 * Total on all word pairs; chosen so that p^{|w(-)z|} <= p^{|w|-|z|} whenever
 * z is a prefix of w and p is in (0,1).
 */
inline word string_minus(const word& w, const word& z) {
    if (w.size() > z.size() && w.starts_with(z)) return w.suffix_from(z.size());
    if (z.starts_with(w)) return word{};
    return w;
}

// True iff one word is a prefix of the other (z lies in the comparability
// set of w).
inline bool is_comparable(const word& w, const word& z) {
    return w.starts_with(z) || z.starts_with(w);
}

inline bool is_prefix_free(const std::vector<word>& words) {
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            if (i != j && words[j].starts_with(words[i])) return false;
    return true;
}

namespace detail {
inline void require_prefix_free_nonempty(const std::vector<word>& lex, const char* who) {
    if (lex.empty()) throw std::invalid_argument(std::string(who) + ": empty word set");
    for (const word& w : lex)
        if (w.empty()) throw std::invalid_argument(std::string(who) + ": lambda in word set");
    if (!is_prefix_free(lex))
        throw std::invalid_argument(std::string(who) + ": word set is not prefix-free");
}
}  // namespace detail

/*
 * Remainder of w with respect to a prefix-free set L: the shortest element
 * of { w (-) s : s in L*, |s| <= |w| }.  Position j of w is reachable when
 * some reachable i < j has w[i..j) in L; the remainder is the suffix after
 * the largest reachable position.  Prefix-freeness makes the parse unique,
 * which is what pins down "shortest"; non-prefix-free sets are rejected.
 */
inline word remainder(const word& w, const std::vector<word>& lex) {
    detail::require_prefix_free_nonempty(lex, "remainder");
    std::size_t n = w.size();
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    std::size_t best = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!reach[i]) continue;
        best = std::max(best, i);
        for (const word& c : lex) {
            if (c.size() > n - i) continue;
            bool ok = true;
            for (std::size_t t = 0; t < c.size(); ++t)
                if (w[i + t] != c[t]) { ok = false; break; }
            if (ok) reach[i + c.size()] = 1;
        }
    }
    return w.suffix_from(best);
}

// Completion set L_w = { s : remainder(w, L) s in L }; prefix-free whenever
// L is.
inline std::vector<word> completion_set(const word& w, const std::vector<word>& lex) {
    word rem = remainder(w, lex);
    std::vector<word> out;
    for (const word& c : lex)
        if (c.starts_with(rem)) out.push_back(c.suffix_from(rem.size()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace vlcode
