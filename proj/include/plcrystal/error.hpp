#pragma once

#include <stdexcept>
#include <string>

namespace plc {

enum class Errc {
  InfiniteGroup,
  BadSpec,
  DimMismatch,
  OutOfDomain,
  DomainMismatch,
  NotReduced,
  OutOfRange,
  NotDominant,
  BadCosineBound,
  NotInPolytope,
  EmptyPolytope,
  SingularZ,
  SingularArgument,
  NonpositiveInput,
  NonpositiveXi,
  RankUnsupported,
  IoError,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::InfiniteGroup: return "InfiniteGroup";
    case Errc::BadSpec: return "BadSpec";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotReduced: return "NotReduced";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotDominant: return "NotDominant";
    case Errc::BadCosineBound: return "BadCosineBound";
    case Errc::NotInPolytope: return "NotInPolytope";
    case Errc::EmptyPolytope: return "EmptyPolytope";
    case Errc::SingularZ: return "SingularZ";
    case Errc::SingularArgument: return "SingularArgument";
    case Errc::NonpositiveInput: return "NonpositiveInput";
    case Errc::NonpositiveXi: return "NonpositiveXi";
    case Errc::RankUnsupported: return "RankUnsupported";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every library failure is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace plc
