#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codonctx {

// Base of every recoverable error raised by the library. Programming errors
// (bad indices, violated call contracts) use std::invalid_argument instead.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class FastaError : public Error {
   public:
    FastaError(const std::string& msg, std::string record, std::size_t offset)
        : Error(msg), record_(std::move(record)), offset_(offset) {}

    const std::string& record() const noexcept { return record_; }
    // Byte offset into the input stream.
    std::size_t offset() const noexcept { return offset_; }

   private:
    std::string record_;
    std::size_t offset_;
};

class CdsError : public Error {
   public:
    using Error::Error;
};

class TableError : public Error {
   public:
    TableError(const std::string& msg, std::size_t line) : Error(msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

// Input is well-formed but insufficient or inconsistent for the request
// (too short, distribution does not match protein, table lacks counts...).
class DataError : public Error {
   public:
    using Error::Error;
};

// A search or enumeration would exceed its configured resource cap.
class CapExceeded : public Error {
   public:
    CapExceeded(const std::string& msg, double estimate, double cap)
        : Error(msg), estimate_(estimate), cap_(cap) {}

    double estimate() const noexcept { return estimate_; }
    double cap() const noexcept { return cap_; }

   private:
    double estimate_;
    double cap_;
};

}  // namespace codonctx
