#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// A documented precondition was violated (bad order, bad bracket, pole argument, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method exhausted its budget without meeting its tolerance.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or evaluator finished but its error estimate exceeds the request.
/// Carries the achieved estimate so callers can decide whether to accept anyway.
class tolerance_error : public std::runtime_error {
public:
    tolerance_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Linear system factorization hit a (numerically) zero pivot.
class singular_error : public std::runtime_error {
public:
    singular_error(const std::string& what, int pivot_index)
        : std::runtime_error(what), pivot_index_(pivot_index) {}
    int pivot_index() const { return pivot_index_; }

private:
    int pivot_index_;
};

/// File could not be opened or written.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fraclab
