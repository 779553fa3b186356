#pragma once

// Exception types thrown by the oplab headers.  Everything derives from
// oplab::error so callers can catch the whole family at once; the CLI maps
// no_convergence to exit code 3 and every other oplab::error to exit code 2.

#include <stdexcept>
#include <string>

namespace oplab {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument does not hold (out-of-range index, bad tolerance, ...).
class invalid_argument : public error {
public:
    using error::error;
};

// A linear fractional map was evaluated at (or numerically at) its pole.
class pole_hit : public error {
public:
    using error::error;
};

// The pole of a linear fractional map lies in the closed unit disk, so it has
// no Taylor expansion converging on the disk.
class pole_inside_disk : public error {
public:
    using error::error;
};

// phi(w) left the open disk where a derivative kernel K_{phi(w)} is needed.
class image_on_boundary : public error {
public:
    using error::error;
};

// A gamma_M path request produced no points.
class empty_path : public error {
public:
    using error::error;
};

class no_convergence : public error {
public:
    using error::error;
};

}  // namespace oplab
