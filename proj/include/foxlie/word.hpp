#pragma once

#include "foxlie/ints.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iosfwd>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace foxlie {

// Reduced word in the free group on x1..xn.  Letters are stored as signed
// 1-based generator indices: +i for xi, -i for xi^-1.  Every constructor and
// operation reduces eagerly, so two words are equal in the group iff their
// letter sequences coincide.
class Word {
public:
    Word() : rank_(0) {}

    static Word identity(int rank) { return Word(rank, {}); }

    static Word generator(int rank, int i, int exp = 1) {
        check_index(rank, i);
        std::vector<int> ls;
        for (int j = 0; j < std::abs(exp); ++j) ls.push_back(exp > 0 ? i : -i);
        return Word(rank, std::move(ls));
    }

    static Word from_letters(int rank, std::vector<int> letters) {
        for (int l : letters) check_index(rank, std::abs(l));
        return Word(rank, std::move(letters));
    }

    static Word parse(std::string_view text, int rank);

    int rank() const { return rank_; }
    std::size_t size() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    const std::vector<int>& letters() const { return letters_; }

    Word operator*(const Word& o) const {
        check_rank(o);
        std::vector<int> ls = letters_;
        append_reduced(ls, o.letters_);
        return Word(rank_, std::move(ls), already_reduced{});
    }

    Word inverse() const {
        std::vector<int> ls(letters_.rbegin(), letters_.rend());
        for (int& l : ls) l = -l;
        return Word(rank_, std::move(ls), already_reduced{});
    }

    Word pow(long e) const {
        Word base = e < 0 ? inverse() : *this;
        long k = std::labs(e);
        std::vector<int> ls;
        ls.reserve(base.size() * static_cast<std::size_t>(k ? k : 1));
        for (long j = 0; j < k; ++j) append_reduced(ls, base.letters_);
        return Word(rank_, std::move(ls), already_reduced{});
    }

    // [a, b] = a b a^-1 b^-1
    static Word commutator(const Word& a, const Word& b) {
        return a * b * a.inverse() * b.inverse();
    }

    // ^y x = y x y^-1 and x ^ y = y^-1 x y
    static Word conj_left(const Word& y, const Word& x) { return y * x * y.inverse(); }
    static Word conj_right(const Word& x, const Word& y) { return y.inverse() * x * y; }

    // Exponent sum of xi (image in the abelianization).
    long long exponent_sum(int i) const {
        check_index(rank_, i);
        long long s = 0;
        for (int l : letters_) {
            if (l == i) ++s;
            else if (l == -i) --s;
        }
        return s;
    }

    bool operator==(const Word& o) const {
        return rank_ == o.rank_ && letters_ == o.letters_;
    }
    bool operator!=(const Word& o) const { return !(*this == o); }

    // Graded-lexicographic order, used for group-ring term maps.
    bool operator<(const Word& o) const {
        if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
        return letters_ < o.letters_;
    }

    std::string str() const {
        if (letters_.empty()) return "1";
        std::ostringstream out;
        std::size_t i = 0;
        bool first = true;
        while (i < letters_.size()) {
            std::size_t j = i;
            while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
            long run = static_cast<long>(j - i);
            long exp = letters_[i] > 0 ? run : -run;
            if (!first) out << ' ';
            out << 'x' << std::abs(letters_[i]);
            if (exp != 1) out << '^' << exp;
            first = false;
            i = j;
        }
        return out.str();
    }

private:
    struct already_reduced {};

    Word(int rank, std::vector<int> letters) : rank_(rank) {
        letters_.reserve(letters.size());
        append_reduced(letters_, letters);
    }
    Word(int rank, std::vector<int> letters, already_reduced)
        : rank_(rank), letters_(std::move(letters)) {}

    static void append_reduced(std::vector<int>& acc, const std::vector<int>& tail) {
        for (int l : tail) {
            if (!acc.empty() && acc.back() == -l) acc.pop_back();
            else acc.push_back(l);
        }
    }

    static void check_index(int rank, int i) {
        if (i < 1 || i > rank)
            throw std::invalid_argument("generator index x" + std::to_string(i) +
                                        " out of range for rank " + std::to_string(rank));
    }
    void check_rank(const Word& o) const {
        if (rank_ != o.rank_)
            throw std::invalid_argument("rank mismatch: " + std::to_string(rank_) +
                                        " vs " + std::to_string(o.rank_));
    }

    int rank_;
    std::vector<int> letters_;
};

namespace detail {

// Recursive-descent parser for the word grammar
//   word := term+        term := atom ('^' int)?
//   atom := 'x' int | '(' word ')' | '[' word ',' word ']'
// Terms are separated by whitespace; '*' is accepted as a separator so the
// same parser serves group-ring element syntax.
class WordParser {
public:
    WordParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

    Word parse_all() {
        Word w = parse_word();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return w;
    }

    Word parse_word() {
        Word acc = Word::identity(rank_);
        bool any = false;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == ')' || c == ',' || c == ']') break;
            acc = acc * parse_term();
            any = true;
        }
        if (!any) fail("expected a word");
        return acc;
    }

private:
    Word parse_term() {
        Word atom = parse_atom();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            long e = parse_int();
            return atom.pow(e);
        }
        return atom;
    }

    Word parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected an atom");
        char c = text_[pos_];
        if (c == 'x' || c == 'X') {
            std::size_t at = pos_;
            ++pos_;
            long i = parse_int();
            if (i < 1 || i > rank_) {
                pos_ = at;
                fail("generator index out of range for rank " + std::to_string(rank_));
            }
            return Word::generator(rank_, static_cast<int>(i));
        }
        if (c == '(') {
            ++pos_;
            Word w = parse_word();
            expect(')');
            return w;
        }
        if (c == '[') {
            ++pos_;
            Word a = parse_word();
            expect(',');
            Word b = parse_word();
            expect(']');
            return Word::commutator(a, b);
        }
        fail("expected 'x<i>', '(' or '['");
        return Word();  // unreachable
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) { pos_ = start; fail("expected an integer"); }
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("word syntax error at position " + std::to_string(pos_) +
                                    ": " + msg);
    }

    std::string_view text_;
    int rank_;

public:
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Word Word::parse(std::string_view text, int rank) {
    return detail::WordParser(text, rank).parse_all();
}

// Endomorphism of the free group, given by the images of the generators.
class Endomorphism {
public:
    Endomorphism() : rank_(0) {}

    explicit Endomorphism(std::vector<Word> images) : images_(std::move(images)) {
        rank_ = static_cast<int>(images_.size());
        for (const Word& w : images_)
            if (w.rank() != rank_)
                throw std::invalid_argument("endomorphism image has wrong rank");
    }

    static Endomorphism identity(int rank) {
        std::vector<Word> im;
        for (int i = 1; i <= rank; ++i) im.push_back(Word::generator(rank, i));
        return Endomorphism(std::move(im));
    }

    // Semicolon-separated generator images: "x2 x1 x2^-1; x2".
    static Endomorphism parse(std::string_view text, int rank) {
        std::vector<Word> im;
        std::size_t start = 0;
        for (int i = 0; i < rank; ++i) {
            std::size_t sep = text.find(';', start);
            std::string_view piece =
                sep == std::string_view::npos ? text.substr(start) : text.substr(start, sep - start);
            if (i + 1 < rank && sep == std::string_view::npos)
                throw std::invalid_argument("endomorphism needs " + std::to_string(rank) +
                                            " semicolon-separated images");
            im.push_back(Word::parse(piece, rank));
            start = sep == std::string_view::npos ? text.size() : sep + 1;
        }
        if (text.find(';', start) != std::string_view::npos || start < text.size())
            throw std::invalid_argument("too many images for rank " + std::to_string(rank));
        return Endomorphism(std::move(im));
    }

    int rank() const { return rank_; }
    const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<Word>& images() const { return images_; }

    Word apply(const Word& w) const {
        if (w.rank() != rank_) throw std::invalid_argument("apply: rank mismatch");
        Word out = Word::identity(rank_);
        for (int l : w.letters())
            out = out * (l > 0 ? image(l) : image(-l).inverse());
        return out;
    }

    // (*this) o inner: first apply inner, then this.
    Endomorphism compose(const Endomorphism& inner) const {
        if (inner.rank_ != rank_) throw std::invalid_argument("compose: rank mismatch");
        std::vector<Word> im;
        im.reserve(images_.size());
        for (const Word& w : inner.images_) im.push_back(apply(w));
        return Endomorphism(std::move(im));
    }

    Endomorphism power(int e) const {
        if (e < 0) throw std::invalid_argument("power: negative exponent");
        Endomorphism out = identity(rank_);
        for (int j = 0; j < e; ++j) out = compose(out);
        return out;
    }

    // Matrix of the induced map on the abelianization; row i lists the
    // exponent sums of the image of xi.
    std::vector<std::vector<long long>> abelianization() const {
        std::vector<std::vector<long long>> m(static_cast<std::size_t>(rank_),
                                              std::vector<long long>(static_cast<std::size_t>(rank_)));
        for (int i = 1; i <= rank_; ++i)
            for (int j = 1; j <= rank_; ++j)
                m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    image(i).exponent_sum(j);
        return m;
    }

    bool operator==(const Endomorphism& o) const {
        return rank_ == o.rank_ && images_ == o.images_;
    }
    bool operator!=(const Endomorphism& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream out;
        for (int i = 1; i <= rank_; ++i) {
            if (i > 1) out << "; ";
            out << image(i).str();
        }
        return out.str();
    }

private:
    int rank_;
    std::vector<Word> images_;
};

inline Word random_word(Rng& rng, int rank, int max_len) {
    int len = static_cast<int>(rng.range(0, max_len));
    std::vector<int> ls;
    for (int j = 0; j < len; ++j) {
        int g = static_cast<int>(rng.range(1, rank));
        ls.push_back(rng.coin() ? g : -g);
    }
    return Word::from_letters(rank, std::move(ls));
}

inline Endomorphism random_endomorphism(Rng& rng, int rank, int max_len) {
    std::vector<Word> im;
    for (int i = 0; i < rank; ++i) im.push_back(random_word(rng, rank, max_len));
    return Endomorphism(std::move(im));
}

}  // namespace foxlie
