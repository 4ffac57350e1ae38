#ifndef CONGLAB_ERROR_HPP_
#define CONGLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace conglab {

  enum class ErrorKind {
    MalformedDoc,
    TableShape,
    EntryRange,
    NotACongruence,
    SignatureMismatch,
    NotALattice,
    SizeBudgetExceeded,
    ParentMismatch,
    TheoryHypothesisFailed,
    HypothesisNotMet,
    NotOrthogonal,
    NoCBLP,
  };

  std::string_view to_string(ErrorKind kind) noexcept;

  // Single exception type for the library; callers branch on kind().
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          _kind(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

}  // namespace conglab

#endif  // CONGLAB_ERROR_HPP_
