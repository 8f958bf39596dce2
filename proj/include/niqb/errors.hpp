#pragma once

#include <stdexcept>
#include <string>

namespace niqb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nuclide_db
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// pulse_engine
struct ScheduleError : Error { using Error::Error; };

// dynamics_core
struct SchemeError : Error { using Error::Error; };
struct IntegrationError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };

// metrics
struct DimensionError : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };

// cli_io
struct UsageError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace niqb
