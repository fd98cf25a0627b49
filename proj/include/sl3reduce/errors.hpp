#pragma once

#include <stdexcept>
#include <string>

namespace sl3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exact-core
struct NotUnimodular : Error { using Error::Error; };

// hessenberg
struct NotHessenberg : Error { using Error::Error; };
struct DegenerateType : Error { using Error::Error; };
struct NoUnimodularCompletion : Error { using Error::Error; };
struct NotPrimitive : Error { using Error::Error; };
struct ReduciblePolynomial : Error { using Error::Error; };

// spectra
struct NoFactorization : Error { using Error::Error; };

// klein-voronoi / reduction
struct SpectrumMismatch : Error { using Error::Error; };
struct RegionTooLarge : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };

// survey / cli
struct BudgetExceeded : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace sl3
