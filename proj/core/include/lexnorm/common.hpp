#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lexnorm {

using WordId = std::uint32_t;

constexpr WordId kInvalidWord = static_cast<WordId>(-1);

/// Runtime failure raised by library operations. The kind tells callers
/// (and the CLI) which contract was violated.
class Error : public std::runtime_error {
public:
    enum class Kind {
        config,                // bad parameter or option combination
        decode,                // malformed input encoding
        empty_input,           // operation needs at least one element
        unencodable,           // word has no phonetic encoding
        domain,                // argument outside an operation's domain
        undefined_similarity,  // no feature available for a word pair
        optimization,          // optimizer hit a non-finite objective
        io,                    // file missing or malformed
    };

    Error(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace lexnorm
