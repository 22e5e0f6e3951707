#include "weylfluid/errors.hpp"

namespace weylfluid {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain_exit: return "domain-exit";
    case ErrorKind::singular_metric: return "singular-metric";
    case ErrorKind::not_timelike: return "not-timelike";
    case ErrorKind::signature: return "signature";
    case ErrorKind::capability: return "capability";
    case ErrorKind::gauge: return "gauge";
    case ErrorKind::reachability: return "reachability";
    case ErrorKind::transversality: return "transversality";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::integrator_accuracy: return "integrator-accuracy";
    case ErrorKind::comparison: return "comparison";
    case ErrorKind::construction: return "construction";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace weylfluid
