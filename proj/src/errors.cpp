#include "zoll/errors.hpp"

namespace zoll {

const char* to_string(FinenessError::Condition condition) {
  switch (condition) {
    case FinenessError::Condition::collinearity:
      return "collinearity";
    case FinenessError::Condition::concurrency:
      return "concurrency";
    case FinenessError::Condition::hemispheres:
      return "hemispheres";
    case FinenessError::Condition::duplicate_or_antipodal:
      return "duplicate_or_antipodal";
  }
  return "unknown";
}

}  // namespace zoll
