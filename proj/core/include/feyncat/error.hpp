#ifndef FEYNCAT_ERROR_HPP_
#define FEYNCAT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace feyncat {

enum class ErrorKind {
  invalid_object,
  invalid_morphism,
  composition_mismatch,
  relabel_required,
  unknown_name,
  domain,
  parse,
  truncation,
  unstable_colimit,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace feyncat

#endif
