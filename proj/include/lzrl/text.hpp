#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lzrl/errors.hpp"

namespace lzrl {

using Letter = std::uint32_t;

/// A string over an integer alphabet. Letters must lie in [0..n] where n is
/// the length; the empty text is rejected.
class Text {
public:
    explicit Text(std::vector<Letter> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw InvalidParams("text must be non-empty");
        for (Letter c : letters_) {
            if (static_cast<std::size_t>(c) > letters_.size())
                throw InvalidParams("letter value exceeds text length");
        }
    }

    std::size_t n() const { return letters_.size(); }

    Letter operator[](std::size_t i) const { return letters_[i]; }

    const std::vector<Letter>& letters() const { return letters_; }

    std::size_t sigma() const {
        if (sigma_ == 0) {
            std::unordered_set<Letter> distinct(letters_.begin(), letters_.end());
            sigma_ = distinct.size();
        }
        return sigma_;
    }

    bool operator==(const Text& other) const { return letters_ == other.letters_; }
    bool operator!=(const Text& other) const { return !(*this == other); }

private:
    std::vector<Letter> letters_;
    mutable std::size_t sigma_ = 0;
};

}  // namespace lzrl
