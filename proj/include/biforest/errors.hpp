#pragma once

#include <stdexcept>
#include <string>

namespace biforest {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidIndex : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct NotABijection : Error { using Error::Error; };
struct SymmetryMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct HeightMismatch : Error { using Error::Error; };
struct LabelMismatch : Error { using Error::Error; };
struct MissingOperation : Error { using Error::Error; };
struct TensorTooLarge : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct NotSimplifiable : Error { using Error::Error; };
struct InvalidForest : Error { using Error::Error; };

}  // namespace biforest
