#pragma once

#include <string>

// Predicate and constant names of the event languages.
namespace kishon::vocabulary {

inline std::string process_predicate(int i) { return "p_" + std::to_string(i); }
inline std::string assignment_to(const std::string& local) { return "Assignment-to-" + local; }
inline std::string write_on(const std::string& reg) { return "Write-on-" + reg; }
inline std::string read_of(const std::string& reg) { return "Read-of-" + reg; }
inline std::string return_of(int i) { return "Return_" + std::to_string(i); }
inline std::string register_name(int i) { return "R_" + std::to_string(i); }
inline std::string initial_value_constant(int i) { return "d_R_" + std::to_string(i); }
inline std::string pc_constant(int i) { return "PC_" + std::to_string(i); }

/// Predicates of process i in the Kishon instance.
inline std::string assignment_predicate(int i) { return assignment_to("n_" + std::to_string(i)); }
inline std::string write_predicate(int i) { return write_on(register_name(i)); }
inline std::string read_predicate(int i) { return read_of(register_name(1 - i)); }

} // namespace kishon::vocabulary
