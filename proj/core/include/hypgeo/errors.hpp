#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace hypgeo {

enum class Errc {
  invalid_argument,
  geometry_infeasible,
  geometry_inconsistent,
  domain_error,
  search_exhausted,
  curvature_out_of_band,
  integration_failure,
  horizon_too_short,
  bound_violated,
  precondition_unmet,
  admissibility_failed,
  certification_failed,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::geometry_infeasible: return "geometry_infeasible";
    case Errc::geometry_inconsistent: return "geometry_inconsistent";
    case Errc::domain_error: return "domain_error";
    case Errc::search_exhausted: return "search_exhausted";
    case Errc::curvature_out_of_band: return "curvature_out_of_band";
    case Errc::integration_failure: return "integration_failure";
    case Errc::horizon_too_short: return "horizon_too_short";
    case Errc::bound_violated: return "bound_violated";
    case Errc::precondition_unmet: return "precondition_unmet";
    case Errc::admissibility_failed: return "admissibility_failed";
    case Errc::certification_failed: return "certification_failed";
  }
  return "unknown";
}

struct Error {
  Errc code;
  std::string detail;
};

inline Error make_error(Errc code, std::string detail = {}) {
  return Error{code, std::move(detail)};
}

// Small expected-like wrapper; recoverable failures are values, not exceptions,
// so sweep drivers can probe feasibility boundaries.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(v_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(v_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(v_);
  }

 private:
  std::variant<T, Error> v_;
};

}  // namespace hypgeo
