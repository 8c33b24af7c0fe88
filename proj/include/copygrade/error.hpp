/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef COPYGRADE_ERROR_HPP_
#define COPYGRADE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace copygrade {

// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A description with no word tokens cannot be scored.
class EmptyDescription : public Error {
 public:
  EmptyDescription() : Error("empty description") {}
};

// Malformed input file (CSV, JSONL, lexicon, config). The message names the
// offending line or row.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Remote call failed in a way that may succeed on retry (transport error,
// timeout, HTTP error status).
class RetryableError : public Error {
 public:
  using Error::Error;
};

// Remote call returned something we cannot interpret. Retrying will not help.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace copygrade

#endif  // COPYGRADE_ERROR_HPP_
