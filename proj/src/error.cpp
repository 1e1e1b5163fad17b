#include "ipa/error.hpp"

namespace ipa {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::NoSuchRoot: return "NoSuchRoot";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::PermissionDenied: return "PermissionDenied";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadRange: return "BadRange";
    case Errc::PaddingWrite: return "PaddingWrite";
    case Errc::UnderflowExit: return "UnderflowExit";
    case Errc::ScratchExhausted: return "ScratchExhausted";
    case Errc::BadLength: return "BadLength";
    case Errc::BadOrder: return "BadOrder";
    case Errc::SizeOrder: return "SizeOrder";
    case Errc::NonUnitConstant: return "NonUnitConstant";
    case Errc::NonUnitLeading: return "NonUnitLeading";
    case Errc::NonUnit: return "NonUnit";
    case Errc::PreconditionTopNonzero: return "PreconditionTopNonzero";
    case Errc::PreconditionLowNonzero: return "PreconditionLowNonzero";
    case Errc::ScratchTooSmall: return "ScratchTooSmall";
    case Errc::BadScratch: return "BadScratch";
    case Errc::SizeContract: return "SizeContract";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::ZeroPointWithShift: return "ZeroPointWithShift";
    case Errc::BadParams: return "BadParams";
    case Errc::LambdaZero: return "LambdaZero";
    case Errc::BadSlice: return "BadSlice";
    case Errc::NonMonicModulus: return "NonMonicModulus";
    case Errc::ZeroRow: return "ZeroRow";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::OverlapUnsupported: return "OverlapUnsupported";
    case Errc::RegionMismatch: return "RegionMismatch";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ipa
