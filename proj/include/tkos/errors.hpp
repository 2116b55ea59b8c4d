#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tkos {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input text could not be parsed. `position` is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

/// Two operands live over different variable counts.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

/// Values over distinct cyclotomic orders were combined and neither is rational.
struct MixedOrders : Error {
    explicit MixedOrders(const std::string& msg) : Error(msg) {}
};

/// A degree-bounded solve or class test was asked of a non-cocycle.
struct NotCocycle : Error {
    explicit NotCocycle(const std::string& msg) : Error(msg) {}
};

/// The fast projection path was asked of a morphism that is not closed.
struct NotClosed : Error {
    explicit NotClosed(const std::string& msg) : Error(msg) {}
};

/// Cochain operands tagged with different sectors.
struct SectorMismatch : Error {
    explicit SectorMismatch(const std::string& msg) : Error(msg) {}
};

/// Cochain operands of incompatible cohomological degree.
struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

/// A defining polynomial identity failed to hold; indicates a bug or an
/// invalid input model.
struct IdentityViolation : Error {
    explicit IdentityViolation(const std::string& msg) : Error(msg) {}
};

/// Group enumeration exceeded the configured cap.
struct GroupTooLarge : Error {
    explicit GroupTooLarge(const std::string& msg) : Error(msg) {}
};

/// A group element outside the model's enumerated group was used.
struct UnknownSector : Error {
    explicit UnknownSector(const std::string& msg) : Error(msg) {}
};

}  // namespace tkos
