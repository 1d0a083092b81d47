#include "confring/parse.hpp"

#include <cctype>

namespace confring {

namespace {

class Cursor {
  public:
    Cursor(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::size_t here() {
        skip_ws();
        return pos_ + 1;  // 1-based for messages
    }
    [[noreturn]] void fail(const std::string& what) {
        throw parse_error(here(), what);
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            pos_ = start;
            fail("expected an integer");
        }
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) fail("integer too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    bool at_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    bool at_alpha() {
        skip_ws();
        return pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]));
    }

    // A, A', B, C+, C-, C0, D+, D-, D0, I+, I-, I0 followed by [i,...,j]
    GenToken gen_token() {
        skip_ws();
        GenToken tok;
        tok.pos = pos_ + 1;
        char head = s_[pos_];
        if (head != 'A' && head != 'B' && head != 'C' && head != 'D' &&
            head != 'I')
            fail("unknown generator name");
        ++pos_;
        tok.kind = std::string(1, head);
        if (head == 'A') {
            if (pos_ < s_.size() && s_[pos_] == '\'') {
                tok.kind = "A'";
                ++pos_;
            }
        } else if (head != 'B') {
            if (pos_ >= s_.size() ||
                (s_[pos_] != '+' && s_[pos_] != '-' && s_[pos_] != '0'))
                fail(std::string("expected +, - or 0 after ") + head);
            tok.kind += s_[pos_];
            ++pos_;
        }
        if (!eat('[')) fail("expected [ after generator name");
        tok.idx.push_back(static_cast<int>(integer()));
        while (eat(',')) tok.idx.push_back(static_cast<int>(integer()));
        if (!eat(']')) fail("expected ] closing generator indices");
        return tok;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

TokenResolver plain_resolver(const Presentation& p) {
    return [&p](const GenToken& tok) -> Element {
        const char* want = p.family() == Family::orbit ? "A" : "A'";
        if (tok.kind != want)
            throw domain_error("generator " + tok.kind +
                               "[..] not available in this presentation");
        if (tok.idx.size() != 2)
            throw domain_error("generator needs exactly two indices");
        return p.gen(tok.idx[0], tok.idx[1]);
    };
}

Element parse_element(const std::string& text, const Presentation& p,
                      const TokenResolver& resolve) {
    Cursor cur(text);
    if (cur.done()) cur.fail("empty expression");

    Element total = p.zero();
    bool first = true;
    while (true) {
        // term sign
        int sign = 1;
        if (cur.eat('-'))
            sign = -1;
        else if (cur.eat('+'))
            sign = 1;
        else if (!first)
            cur.fail("expected + or - between terms");
        if (cur.done()) cur.fail("expected a term");

        Scalar coeff = Scalar::from_int(sign, p.prime());
        Element monopart = p.one();
        bool any = false;
        while (true) {
            if (cur.at_digit()) {
                long num = cur.integer();
                Scalar c = Scalar::from_int(num, p.prime());
                if (cur.eat('/')) {
                    std::size_t at = cur.here();
                    long den = cur.integer();
                    Scalar d = Scalar::from_int(den, p.prime());
                    if (d.is_zero()) throw parse_error(at, "zero denominator");
                    c /= d;
                }
                coeff *= c;
            } else if (cur.at_alpha()) {
                GenToken tok = cur.gen_token();
                try {
                    monopart = p.multiply(monopart, resolve(tok));
                } catch (const parse_error&) {
                    throw;
                } catch (const domain_error& e) {
                    throw parse_error(tok.pos, e.what());
                }
            } else {
                cur.fail("expected a coefficient or generator");
            }
            any = true;
            if (!cur.eat('*')) break;
        }
        if (!any) cur.fail("empty term");
        monopart.scale(coeff);
        total += monopart;
        first = false;

        if (cur.done()) break;
        char c = cur.peek();
        if (c != '+' && c != '-') cur.fail("unexpected trailing input");
    }
    return total;
}

Element parse_element(const std::string& text, const Presentation& p) {
    return parse_element(text, p, plain_resolver(p));
}

}  // namespace confring
