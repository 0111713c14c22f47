#pragma once

#include "ifshide/deform.hpp"
#include "ifshide/hiding.hpp"

namespace ifshide {

/// Half-line model: contraction (1-1/w)x near 0, eventual translation x-1,
/// g = x + d; right tail of K carries the template's bottom shape, period 1.
struct RunwayPiece {
    IFSPiece piece;
    long d = 0;   // g-translation, d = omega + i0
    long i0 = 0;  // deformation-sequence length
    Region right_shape;  // shape of the right tail (period 1)

    RunwayPiece() : right_shape(Region::normalize({Ivl(Rat(0), Rat(1))})) {}
};

RunwayPiece build_runway(long omega);

/// Full-line model translating by r on both ends; transports the left tail
/// shape K1 into the right tail shape K2 (shapes on the unit circle, then
/// renormalized to circumference 1/q).
struct ConnectorPiece {
    IFSPiece piece;
    Rat r;
    Region left_shape, right_shape;  // shapes on the circle of circumference 1/q

    ConnectorPiece()
        : left_shape(Region::normalize({Ivl(Rat(0), Rat(1))})),
          right_shape(Region::normalize({Ivl(Rat(0), Rat(1))})) {}
};

ConnectorPiece build_connector(long omega, const Rat& r, const Region& K1, const Region& K2);

}  // namespace ifshide
