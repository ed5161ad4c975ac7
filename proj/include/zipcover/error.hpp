#ifndef zipcover_error_hpp
#define zipcover_error_hpp

#include <stdexcept>
#include <string>

namespace zipcover {

enum class ErrorKind {
    Input,           // malformed or out-of-range caller input
    Contract,        // an operation's precondition was violated
    Size,            // a guarded brute-force routine refused a large input
    Reconstruction,  // a cover could not be turned into a deterministic filter
    Internal         // a claimed invariant failed; indicates a bug
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return "input error";
        case ErrorKind::Contract: return "contract violation";
        case ErrorKind::Size: return "size error";
        case ErrorKind::Reconstruction: return "reconstruction error";
        case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(ErrorKind::Input, message) {}
};

class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& message) : Error(ErrorKind::Contract, message) {}
};

class SizeError : public Error {
public:
    explicit SizeError(const std::string& message) : Error(ErrorKind::Size, message) {}
};

class ReconstructionError : public Error {
public:
    explicit ReconstructionError(const std::string& message)
        : Error(ErrorKind::Reconstruction, message) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& message) : Error(ErrorKind::Internal, message) {}
};

}  // namespace zipcover

#endif /* zipcover_error_hpp */
