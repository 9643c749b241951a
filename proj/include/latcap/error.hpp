#pragma once

#include <stdexcept>
#include <string>

namespace latcap {

enum class errc {
  not_a_partial_order,
  not_a_lattice,
  no_top,
  size_exceeded,
  not_distributive,
  empty_index_set,
  invalid_set_function,
  unsupported_class_for_direction,
  prerequisite_class_failed,
  classification_failed,
  non_unique_solution,
  not_an_antichain,
  evaluator_not_exact,
  bad_measure,
  bad_input,
  config_error,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace latcap
