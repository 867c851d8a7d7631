// Copyright 2026 The rehab-extract Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REHAB_ERROR_H_
#define REHAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace rehab {

// Base class for every error raised by the library. The command line tool
// maps any Error to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define REHAB_DEFINE_ERROR(Name)      \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

REHAB_DEFINE_ERROR(ParseError);
REHAB_DEFINE_ERROR(ValidationError);
REHAB_DEFINE_ERROR(NotFound);
REHAB_DEFINE_ERROR(ConfigError);
REHAB_DEFINE_ERROR(InsufficientSections);
REHAB_DEFINE_ERROR(UnknownConcept);
REHAB_DEFINE_ERROR(ShapeError);
REHAB_DEFINE_ERROR(DegenerateDistribution);
REHAB_DEFINE_ERROR(SingleClass);
REHAB_DEFINE_ERROR(EmptyCorpus);
REHAB_DEFINE_ERROR(KeyMismatch);
REHAB_DEFINE_ERROR(Ineligible);
REHAB_DEFINE_ERROR(BackendError);
REHAB_DEFINE_ERROR(NoNumber);

#undef REHAB_DEFINE_ERROR

// A rule whose pattern does not compile. Carries the 1-based line of the
// offending record in the rules file (0 for rules built in memory).
class PatternError : public Error {
 public:
  PatternError(const std::string& what, int line)
      : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace rehab

#endif  // REHAB_ERROR_H_
