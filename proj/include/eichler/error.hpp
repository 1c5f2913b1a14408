#pragma once

#include <stdexcept>
#include <string>

namespace eichler {

enum class Errc {
  BadParams,
  NoLift,
  NotPrimitive,
  NotNegativeDisc,
  DiscMismatch,
  BadDisc,
  NotCoprime,
  BadQ,
  NotProper,
  NotSplit,
  AlgebraMismatch,
  NotAnOrder,
  DegenerateBasis,
  NotSublattice,
  Unlabeled,
  CtxMismatch,
  PrecisionExhausted,
  ResultantZero,
  Singular,
  PTooLarge,
  BadN,
  InvalidKernel,
  UnsupportedEll,
  Parse,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace eichler
