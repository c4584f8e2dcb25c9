// SPDX-License-Identifier: Apache-2.0
//
// bdris - simulation and optimization toolkit for hybrid
// transmitting/reflecting beyond-diagonal reconfigurable surfaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BDRIS_CORE_ERRORS_HPP
#define BDRIS_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdris {

// Stable error identifiers, mirrored one-to-one by the C API status codes.
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,
    singular_conversion = 2,
    mismatched_reference = 3,
    non_cascadable = 4,
    singular_system = 5,
    degenerate_circuit = 6,
    non_passive = 7,
    infinite_ratio = 8,
    unachievable = 9,
    phase_undefined = 10,
    degenerate_load = 11,
    invalid_layout = 12,
    schema_error = 13,
    reciprocity_error = 14,
    grid_mismatch = 15,
    wrong_side = 16,
    zero_pattern = 17,
    no_beam = 18,
    too_large = 19,
    io_error = 20,
    internal = 21,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

#define BDRIS_DEFINE_ERROR(NAME, CODE)                                                             \
    class NAME : public Error {                                                                    \
      public:                                                                                      \
        explicit NAME(const std::string &what) : Error(ErrorCode::CODE, what) {}                   \
    }

BDRIS_DEFINE_ERROR(InvalidArgument, invalid_argument);
BDRIS_DEFINE_ERROR(SingularConversion, singular_conversion);
BDRIS_DEFINE_ERROR(MismatchedReference, mismatched_reference);
BDRIS_DEFINE_ERROR(NonCascadable, non_cascadable);
BDRIS_DEFINE_ERROR(SingularSystem, singular_system);
BDRIS_DEFINE_ERROR(DegenerateCircuit, degenerate_circuit);
BDRIS_DEFINE_ERROR(NonPassive, non_passive);
BDRIS_DEFINE_ERROR(InfiniteRatio, infinite_ratio);
BDRIS_DEFINE_ERROR(Unachievable, unachievable);
BDRIS_DEFINE_ERROR(PhaseUndefined, phase_undefined);
BDRIS_DEFINE_ERROR(DegenerateLoad, degenerate_load);
BDRIS_DEFINE_ERROR(InvalidLayout, invalid_layout);
BDRIS_DEFINE_ERROR(SchemaError, schema_error);
BDRIS_DEFINE_ERROR(ReciprocityError, reciprocity_error);
BDRIS_DEFINE_ERROR(GridMismatch, grid_mismatch);
BDRIS_DEFINE_ERROR(WrongSide, wrong_side);
BDRIS_DEFINE_ERROR(ZeroPattern, zero_pattern);
BDRIS_DEFINE_ERROR(NoBeam, no_beam);
BDRIS_DEFINE_ERROR(TooLarge, too_large);
BDRIS_DEFINE_ERROR(IoError, io_error);

#undef BDRIS_DEFINE_ERROR

} // namespace bdris

#endif
