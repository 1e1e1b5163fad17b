#pragma once

#include <stdexcept>
#include <string>

namespace ipa {

enum class Errc {
  NotPrime,
  ZeroInverse,
  NoSuchRoot,
  LengthMismatch,
  PermissionDenied,
  OutOfRange,
  BadRange,
  PaddingWrite,
  UnderflowExit,
  ScratchExhausted,
  BadLength,
  BadOrder,
  SizeOrder,
  NonUnitConstant,
  NonUnitLeading,
  NonUnit,
  PreconditionTopNonzero,
  PreconditionLowNonzero,
  ScratchTooSmall,
  BadScratch,
  SizeContract,
  DuplicatePoint,
  ZeroPointWithShift,
  BadParams,
  LambdaZero,
  BadSlice,
  NonMonicModulus,
  ZeroRow,
  DimMismatch,
  OverlapUnsupported,
  RegionMismatch,
  NotPowerOfTwo,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  explicit Error(Errc c) : Error(c, errc_name(c)) {}

  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  Errc code_;
};

inline void require(bool ok, Errc c, const char* what = nullptr) {
  if (!ok) {
    if (what) throw Error(c, std::string(errc_name(c)) + ": " + what);
    throw Error(c);
  }
}

}  // namespace ipa
