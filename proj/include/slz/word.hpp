#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slz/group_element.hpp"
#include "slz/integer.hpp"

namespace slz {

// One letter of a macro word. Elem and Diag letters belong to the generating set;
// Short is the shortcut token for e_ij(x).
struct Letter {
    enum class Kind : uint8_t { Elem, Diag, Short };
    Kind kind = Kind::Elem;
    int8_t i = 0, j = 0;   // 1-based, Elem and Short
    int8_t sign = 1;       // Elem exponent, +1 or -1
    int8_t dn = 0;         // Diag dimension
    uint32_t dmask = 0;    // Diag: bit k set iff entry k+1 is -1
    Int x;                 // Short coefficient

    static Letter elem(int i, int j, int sign = 1);
    static Letter diag(const std::vector<int>& signs);
    static Letter shortcut(int i, int j, const Int& x);

    bool is_plain() const { return kind != Kind::Short; }
    std::vector<int> diag_signs() const;
    Letter inverse() const;

    friend bool operator==(const Letter& a, const Letter& b);
};

// Words are deliberately unreduced. A Word may contain Short letters; a plain word does not.
using Word = std::vector<Letter>;

bool is_plain(const Word& w);
bool are_inverse(const Letter& a, const Letter& b);

GroupElement evaluate(const Word& w, int n);
// Right-multiplies g in place by the letters of w[begin, end).
void evaluate_into(GroupElement& g, const Word& w, size_t begin, size_t end);
Word free_reduce(const Word& w);
Word invert_word(const Word& w);
Word concat(const Word& u, const Word& v);
// Letters of w[begin, begin+len) as a new word.
Word slice(const Word& w, size_t begin, size_t len);

// Word with a movable gap: edits near the previous edit cost O(distance moved + edit size).
class GapWord {
public:
    GapWord() = default;
    explicit GapWord(Word w) : buf_(std::move(w)), gs_(buf_.size()), ge_(buf_.size()) {}

    size_t size() const { return buf_.size() - (ge_ - gs_); }
    bool empty() const { return size() == 0; }
    const Letter& operator[](size_t p) const { return p < gs_ ? buf_[p] : buf_[p + (ge_ - gs_)]; }
    // Replaces [pos, pos+len) by `by`.
    void replace(size_t pos, size_t len, const Word& by);
    Word to_word() const;

private:
    void move_gap(size_t pos);
    void reserve_gap(size_t need);
    Word buf_;
    size_t gs_ = 0, ge_ = 0;  // gap is buf_[gs_, ge_)
};

// Text format: e{i},{j} | e{i},{j}^-1 | d[{+-1},...] | E{i},{j}[{x}]
std::string format_letter(const Letter& a);
std::string format_word(const Word& w);
Letter parse_letter(const std::string& token);
Word parse_word(const std::string& line);

}  // namespace slz
