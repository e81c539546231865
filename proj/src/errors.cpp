#include "qpmut/errors.hpp"

namespace qpmut {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Composition: return "composition";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::SearchBudget: return "search-budget";
    case ErrorKind::Nontermination: return "nontermination";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Dimensionality: return "dimensionality";
    case ErrorKind::Convention: return "convention";
    case ErrorKind::UnsupportedPresentation: return "unsupported-presentation";
    case ErrorKind::NotInClass: return "not-in-class";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Classification: return "classification";
    case ErrorKind::Scope: return "scope";
  }
  return "unknown";
}

}  // namespace qpmut
