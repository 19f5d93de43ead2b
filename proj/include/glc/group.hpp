#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace glc {

// Element of the free abelian group over named generators, written
// multiplicatively. The neutral element is the empty exponent map; zero
// exponents are never stored.
class GroupElem {
public:
    GroupElem() = default;

    static GroupElem identity() { return GroupElem{}; }

    static GroupElem generator(const std::string& name, std::int64_t exp = 1) {
        GroupElem e;
        if (exp != 0) e.exps_[name] = exp;
        return e;
    }

    // Parses "1", "a", "a^2", "a^-1*b^3". Generators are identifiers,
    // factors are separated by '*'.
    static GroupElem parse(const std::string& text);

    bool is_identity() const { return exps_.empty(); }

    GroupElem operator*(const GroupElem& other) const {
        GroupElem r = *this;
        for (const auto& [g, e] : other.exps_) {
            auto it = r.exps_.find(g);
            if (it == r.exps_.end()) {
                r.exps_[g] = e;
            } else {
                it->second += e;
                if (it->second == 0) r.exps_.erase(it);
            }
        }
        return r;
    }

    GroupElem inverse() const {
        GroupElem r;
        for (const auto& [g, e] : exps_) r.exps_[g] = -e;
        return r;
    }

    bool operator==(const GroupElem& other) const { return exps_ == other.exps_; }
    bool operator!=(const GroupElem& other) const { return !(*this == other); }
    bool operator<(const GroupElem& other) const { return exps_ < other.exps_; }

    // "1" for the identity, otherwise "a^2*b^-1" with generators sorted.
    std::string str() const {
        if (exps_.empty()) return "1";
        std::string out;
        bool first = true;
        for (const auto& [g, e] : exps_) {
            if (!first) out += '*';
            first = false;
            out += g;
            if (e != 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
        return out;
    }

    const std::map<std::string, std::int64_t>& exponents() const { return exps_; }

private:
    std::map<std::string, std::int64_t> exps_;
};

} // namespace glc
