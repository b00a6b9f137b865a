#include "emgeo/error.hpp"

namespace emgeo {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Format: return "format";
    case ErrorKind::Config: return "config";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Quota: return "quota";
    }
    return "unknown";
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Io: return 2;
    case ErrorKind::Format: return 3;
    case ErrorKind::Config: return 4;
    case ErrorKind::Validation: return 5;
    case ErrorKind::Quota: return 6;
    }
    return 1;
}

} // namespace emgeo
