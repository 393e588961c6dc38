#pragma once

#include <stdexcept>
#include <string>

namespace polcoul {

// Quartic leading coefficient vanishes (eps^2 == M^2) or the transform
// scale A vanishes (alpha == 0): the analysis machinery is undefined there.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// A bracketed search found no sign change / no admissible root.
class no_root_error : public std::runtime_error {
public:
    explicit no_root_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme exhausted its refinement budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polcoul
