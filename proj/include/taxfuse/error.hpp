#pragma once

#include <stdexcept>
#include <string>

namespace taxfuse {

// Every failure the toolkit can report. The CLI maps these onto process exit
// codes: validation problems -> 2, data/file problems -> 3, anything else -> 4.
enum class Errc {
    // validation (exit 2)
    IndentError,
    DuplicateSibling,
    EmptyName,
    BadChar,
    InvalidRoots,
    UnknownPath,
    CycleCreated,
    MappingUnbound,
    LengthMismatch,
    StampMismatch,
    Precondition,
    // data (exit 3)
    ParseError,
    IoError,
    PoolTooSmall,
    EmptyDataset,
    EmptySupport,
    FingerprintMismatch,
    FormatError,
    VersionError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::IndentError: return "INDENT_ERROR";
        case Errc::DuplicateSibling: return "DUPLICATE_SIBLING";
        case Errc::EmptyName: return "EMPTY_NAME";
        case Errc::BadChar: return "BAD_CHAR";
        case Errc::InvalidRoots: return "INVALID_ROOTS";
        case Errc::UnknownPath: return "UNKNOWN_PATH";
        case Errc::CycleCreated: return "CYCLE_CREATED";
        case Errc::MappingUnbound: return "MAPPING_UNBOUND";
        case Errc::LengthMismatch: return "LENGTH_MISMATCH";
        case Errc::StampMismatch: return "STAMP_MISMATCH";
        case Errc::Precondition: return "PRECONDITION";
        case Errc::ParseError: return "PARSE_ERROR";
        case Errc::IoError: return "IO_ERROR";
        case Errc::PoolTooSmall: return "POOL_TOO_SMALL";
        case Errc::EmptyDataset: return "EMPTY_DATASET";
        case Errc::EmptySupport: return "EMPTY_SUPPORT";
        case Errc::FingerprintMismatch: return "FINGERPRINT_MISMATCH";
        case Errc::FormatError: return "FORMAT_ERROR";
        case Errc::VersionError: return "VERSION_ERROR";
    }
    return "UNKNOWN";
}

// 2 = validation error, 3 = data error (CLI contract; 4 is reserved for
// unclassified internal failures).
inline int errc_exit_code(Errc c) {
    switch (c) {
        case Errc::ParseError:
        case Errc::IoError:
        case Errc::PoolTooSmall:
        case Errc::EmptyDataset:
        case Errc::EmptySupport:
        case Errc::FingerprintMismatch:
        case Errc::FormatError:
        case Errc::VersionError:
            return 3;
        default:
            return 2;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }
    int exit_code() const { return errc_exit_code(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace taxfuse
