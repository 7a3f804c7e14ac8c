#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uconf {

// Base of everything thrown by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class invalid_net_error : public error { using error::error; };
class invalid_marking_error : public error { using error::error; };
class not_enabled_error : public error { using error::error; };
class unsupported_net_error : public error { using error::error; };
class not_a_dag_error : public error { using error::error; };
class unreachable_final_marking_error : public error { using error::error; };
class invalid_distribution_error : public error { using error::error; };
class unsupported_distribution_error : public error { using error::error; };
class invalid_assignment_error : public error { using error::error; };
class incomplete_assignment_error : public error { using error::error; };
class invalid_trace_error : public error { using error::error; };
class playout_error : public error { using error::error; };
class internal_consistency_error : public error { using error::error; };

// Malformed input text (XML, JSON, timestamps).
class parse_error : public error { using error::error; };

// Well-formed input whose uncertainty attributes break an invariant.
class schema_error : public error { using error::error; };

// A search or enumeration exceeded its configured bound.
class explosion_error : public error {
  public:
    explosion_error(const std::string& what, std::size_t reached)
        : error(what), reached_(reached) {}

    // How many items (states, sequences) had been produced when the bound tripped.
    std::size_t reached() const noexcept { return reached_; }

  private:
    std::size_t reached_;
};

} // namespace uconf
