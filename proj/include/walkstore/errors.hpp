#ifndef WALKSTORE_ERRORS_HPP
#define WALKSTORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace walkstore {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// malformed input files, bad magic, unknown versions
class ParseError : public Error {
public:
    using Error::Error;
};

// graph shape not accepted by the requested store or operation
class UnsupportedGraph : public Error {
public:
    using Error::Error;
};

class InvalidWalk : public Error {
public:
    using Error::Error;
};

// index or value outside its declared range
class RangeError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

// a configured size or length cap was exceeded
class ResourceError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

} // namespace walkstore

#endif
