"""Published values the CLI compares against with --golden and verify-all."""
import math

CHARPOLY_FACTORED = {
    0: "lambda^2*(lambda + 10)",
    1: "lambda^4*(lambda + 8)^4*(lambda - 22)^4",
    2: "(lambda + 8)^3*lambda^3*(lambda - 6)^9*(lambda - 20)^6*(lambda - 56)^6",
    3: "lambda^8*(lambda^5 - 220*lambda^4 + 16820*lambda^3 - 566720*lambda^2 + 8472000*lambda - 44808192)^8",
    4: "(lambda^2 - 166*lambda + 6720)^10*(lambda^3 - 46*lambda^2 + 560*lambda - 1280)^5"
       "*(lambda^4 - 266*lambda^3 + 20440*lambda^2 - 591360*lambda + 5529600)^10",
}

# the symbolic output for k = 2 in its unnormalized printed form
CHARPOLY_K2_ALT = ("-lambda^3*(lambda + 8)^2*(lambda - 20)^3*(lambda^2 - 26*lambda + 120)^3"
                   "*(lambda^2 - 62*lambda + 336)^5*(- lambda^3 + 54*lambda^2 + 160*lambda - 2688)")
CHARPOLY_K1_ALT = "lambda^4*(- lambda^2 + 14*lambda + 176)^4"

KERNEL_DIM = {0: 2, 1: 4, 2: 3, 3: 8, 4: 0}
INERTIA = {3: (40, 8, 0), 4: (75, 0, 0)}

_r145, _r265 = math.sqrt(145), math.sqrt(265)
EIGENVALUES = {
    0: [-10.0] + [0.0] * 2,
    1: [-8.0] * 4 + [0.0] * 4 + [22.0] * 4,
    2: [-8.0] * 3 + [0.0] * 3 + [6.0] * 9 + [20.0] * 6 + [56.0] * 6,
    3: [0.0] * 8 + [12.0] * 8 + [22.0] * 8 + [32.0] * 8 + [52.0] * 8 + [102.0] * 8,
    4: sorted([16.0] * 5 + [36.0] * 10 + [70.0] * 10 + [96.0] * 10 + [160.0] * 10
              + [15 - _r145] * 5 + [35 - _r265] * 10 + [15 + _r145] * 5 + [35 + _r265] * 10),
}

FIRST_EIGENVALUES = ((-10, 1), (-8, 7), (0, 17))  # L eigenvalues with total multiplicity over k <= 4
JACOBI_FIRST = (("-15/4", 1), ("-3", 7), ("0", 17))
MORSE_INDEX = 8
LEMMA_BOUND = 1.5
