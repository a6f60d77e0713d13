#include "springembed/error.hpp"

namespace springembed {

const char* toString(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Ordering: return "ordering";
    case ErrorKind::Refusal: return "refusal";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace springembed
