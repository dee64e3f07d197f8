#pragma once

#include <stdexcept>
#include <string>

namespace wavecouple {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WAVECOUPLE_ERROR(Name)                                  \
    struct Name : Error {                                       \
        explicit Name(const std::string& what) : Error(what) {} \
    }

WAVECOUPLE_ERROR(NoSolution);
WAVECOUPLE_ERROR(SingularSystem);
WAVECOUPLE_ERROR(EpsilonTooLarge);
WAVECOUPLE_ERROR(OutOfDomain);
WAVECOUPLE_ERROR(OrderTooLow);
WAVECOUPLE_ERROR(CflViolation);
WAVECOUPLE_ERROR(BlowUp);
WAVECOUPLE_ERROR(TimeTooShort);
WAVECOUPLE_ERROR(PicardDiverged);
WAVECOUPLE_ERROR(CharacteristicExitsDomain);
WAVECOUPLE_ERROR(OverlappingSupports);
WAVECOUPLE_ERROR(BadEpsilon);
WAVECOUPLE_ERROR(NoAdmissibleDelta);
WAVECOUPLE_ERROR(FloorViolated);
WAVECOUPLE_ERROR(NewtonStalled);
WAVECOUPLE_ERROR(DataIncompatible);
WAVECOUPLE_ERROR(ParseError);

#undef WAVECOUPLE_ERROR

}  // namespace wavecouple
