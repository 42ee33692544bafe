#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vlcode {

// Finite alphabet {0, ..., D-1}, D >= 2.
class alphabet {
public:
    explicit alphabet(int size) : size_(size) {
        if (size < 2) throw std::invalid_argument("alphabet: size must be >= 2");
    }
    int size() const noexcept { return size_; }
    bool contains(std::uint32_t sym) const noexcept {
        return sym < static_cast<std::uint32_t>(size_);
    }
    friend bool operator==(const alphabet&, const alphabet&) = default;

private:
    int size_;
};

// Immutable-by-convention finite string over some symbol type.  The empty
// word plays the role of lambda.
template <class Sym>
class basic_word {
public:
    using symbol_type = Sym;
    using const_iterator = typename std::vector<Sym>::const_iterator;

    basic_word() = default;
    explicit basic_word(std::vector<Sym> syms) : syms_(std::move(syms)) {}
    basic_word(std::initializer_list<Sym> syms) : syms_(syms) {}

    std::size_t size() const noexcept { return syms_.size(); }
    bool empty() const noexcept { return syms_.empty(); }
    const Sym& operator[](std::size_t i) const { return syms_[i]; }
    const_iterator begin() const noexcept { return syms_.begin(); }
    const_iterator end() const noexcept { return syms_.end(); }
    const std::vector<Sym>& symbols() const noexcept { return syms_; }

    void push_back(const Sym& s) { syms_.push_back(s); }
    void append(const basic_word& w) {
        syms_.insert(syms_.end(), w.syms_.begin(), w.syms_.end());
    }

    basic_word sub(std::size_t pos, std::size_t len) const {
        if (pos > syms_.size() || len > syms_.size() - pos)
            throw std::out_of_range("basic_word::sub");
        return basic_word(std::vector<Sym>(syms_.begin() + pos, syms_.begin() + pos + len));
    }
    basic_word prefix(std::size_t len) const { return sub(0, len); }
    basic_word suffix_from(std::size_t pos) const { return sub(pos, syms_.size() - pos); }

    bool starts_with(const basic_word& p) const {
        if (p.size() > size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!(syms_[i] == p.syms_[i])) return false;
        return true;
    }
    bool ends_with(const basic_word& s) const {
        if (s.size() > size()) return false;
        std::size_t off = size() - s.size();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!(syms_[off + i] == s.syms_[i])) return false;
        return true;
    }

    basic_word reversed() const {
        return basic_word(std::vector<Sym>(syms_.rbegin(), syms_.rend()));
    }

    friend bool operator==(const basic_word&, const basic_word&) = default;
    friend auto operator<=>(const basic_word& a, const basic_word& b) {
        return a.syms_ <=> b.syms_;
    }

private:
    std::vector<Sym> syms_;
};

template <class Sym>
basic_word<Sym> concat(const basic_word<Sym>& a, const basic_word<Sym>& b) {
    basic_word<Sym> out = a;
    out.append(b);
    return out;
}

using word = basic_word<std::uint32_t>;

// Source symbol of the (k, z) processes: a natural number paired with a bit.
struct pair_symbol {
    std::uint64_t k = 1;
    std::uint8_t z = 0;
    friend bool operator==(const pair_symbol&, const pair_symbol&) = default;
    friend auto operator<=>(const pair_symbol&, const pair_symbol&) = default;
};

using source_word = basic_word<pair_symbol>;

// Digit-string round trip for words over alphabets of size <= 10.
inline word word_from_digits(std::string_view digits) {
    std::vector<std::uint32_t> syms;
    syms.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("word_from_digits: non-digit character");
        syms.push_back(static_cast<std::uint32_t>(c - '0'));
    }
    return word(std::move(syms));
}

inline std::string word_to_digits(const word& w) {
    std::string out;
    out.reserve(w.size());
    for (std::uint32_t s : w) {
        if (s > 9) throw std::invalid_argument("word_to_digits: symbol out of digit range");
        out.push_back(static_cast<char>('0' + s));
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const word& w) {
    return os << word_to_digits(w);
}

struct word_hash {
    std::size_t operator()(const word& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t s : w) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/*
 * Two-sided finite window ... x_{-1} x_0 . x_1 x_2 ... with the origin
 * between index 0 and index 1.  The left part is stored reversed (index 0
 * first) so both sides grow away from the origin in O(1); this is not
 * observable through the interface.
 */
template <class Sym>
class basic_window {
public:
    using symbol_type = Sym;

    basic_window() = default;
    basic_window(basic_word<Sym> left, basic_word<Sym> right)
        : left_rev_(left.reversed()), right_(std::move(right)) {}

    static basic_window from_parts_reversed(basic_word<Sym> left_reversed,
                                            basic_word<Sym> right) {
        basic_window w;
        w.left_rev_ = std::move(left_reversed);
        w.right_ = std::move(right);
        return w;
    }

    std::size_t left_size() const noexcept { return left_rev_.size(); }
    std::size_t right_size() const noexcept { return right_.size(); }
    std::size_t size() const noexcept { return left_rev_.size() + right_.size(); }
    bool empty() const noexcept { return size() == 0; }

    // Lowest and highest populated indices; valid only for nonempty sides.
    long long lo() const noexcept { return 1 - static_cast<long long>(left_rev_.size()); }
    long long hi() const noexcept { return static_cast<long long>(right_.size()); }

    const Sym& at(long long i) const {
        if (i >= 1) {
            std::size_t j = static_cast<std::size_t>(i - 1);
            if (j >= right_.size()) throw std::out_of_range("basic_window::at");
            return right_[j];
        }
        std::size_t j = static_cast<std::size_t>(-i);
        if (j >= left_rev_.size()) throw std::out_of_range("basic_window::at");
        return left_rev_[j];
    }

    void append_left(const Sym& s) { left_rev_.push_back(s); }    // new index lo()-1
    void append_right(const Sym& s) { right_.push_back(s); }      // new index hi()+1

    // Left part in natural order x_{lo} ... x_0.
    basic_word<Sym> left_word() const { return left_rev_.reversed(); }
    // Left part as stored: x_0, x_{-1}, ...
    const basic_word<Sym>& left_reversed() const noexcept { return left_rev_; }
    const basic_word<Sym>& right_word() const noexcept { return right_; }

    // Concatenation x_{lo} ... x_{hi} ignoring the origin.
    basic_word<Sym> joined() const {
        basic_word<Sym> out = left_word();
        out.append(right_);
        return out;
    }

    friend bool operator==(const basic_window&, const basic_window&) = default;

private:
    basic_word<Sym> left_rev_;
    basic_word<Sym> right_;
};

using two_sided_window = basic_window<std::uint32_t>;
using source_window = basic_window<pair_symbol>;

}  // namespace vlcode
