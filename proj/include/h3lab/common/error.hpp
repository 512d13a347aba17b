#pragma once

#include <stdexcept>
#include <string>

namespace h3lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value outside an encodable range (e.g. a varint >= 2^62).
class RangeError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Raised whenever live traffic would start without an explicit target
// acknowledgment.
class SafetyError : public Error {
 public:
  using Error::Error;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// A label with no dataset class (probe kinds).
class MappingError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace h3lab
