#pragma once

#include <stdexcept>
#include <string>

namespace sinai {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spec-level rejection of environment / step-law / config parameters.
struct SpecInvalid : Error { using Error::Error; };

// Argument outside an operation's declared domain.
struct DomainError : Error { using Error::Error; };

// Exact-cover propagation would exceed the configured cell cap.
struct WindowOverflow : Error { using Error::Error; };

// Problem size beyond a hard limit (brute-force enumeration, convolutions).
struct TooLarge : Error { using Error::Error; };

// Valley scan hit its site cap before the first-rise position was found.
struct ScanExhausted : Error {
    ScanExhausted(const std::string& msg, int side_) : Error(msg), side(side_) {}
    int side;  // +1: positive half-line failed, -1: negative half-line
};

struct NotInGamma : Error { using Error::Error; };
struct EmptyRange : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct HorizonTooShort : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace sinai
