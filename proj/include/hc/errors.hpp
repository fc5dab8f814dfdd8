/**
 * Exception types shared by every module of the library.
 *
 * Outcomes that are legal answers (a linear system without solution, an
 * algebra without a one-sided unit) are never signalled through exceptions;
 * these types mark broken preconditions or falsified invariants.
 */
#ifndef HC_ERRORS_HPP
#define HC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hc {

struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// g ∘ f ≠ 0 for a candidate sequence f, g.
struct CompositionNotZero : Error
{
    using Error::Error;
};

/// A connecting-morphism lift found no preimage; the short exact sequence is broken.
struct LiftFailure : Error
{
    using Error::Error;
};

/// A chain map does not send cycles to cycles or boundaries to boundaries.
struct WellDefinednessViolation : Error
{
    using Error::Error;
};

/// d(Im(1 - t)) is not contained in Im(1 - t); the cyclic quotient differential is undefined.
struct InducedMapNotWellDefined : Error
{
    using Error::Error;
};

/// A restricted differential leaves its subcomplex.
struct ClosureViolation : Error
{
    using Error::Error;
};

/// Basis-tensor count above the configured cap.
struct DegreeCapExceeded : Error
{
    using Error::Error;
};

/// Malformed input document (JSON syntax or schema).
struct ParseError : Error
{
    using Error::Error;
};

/// Invalid argument to a constructor or preset.
struct InvalidArgument : Error
{
    using Error::Error;
};

}   // namespace hc

#endif
