//! Composite-pulse quantum logic gates and their robustness to systematic
//! control errors.
//!
//! The crate synthesizes the classic error-correcting pulse sequences
//! (CORPSE, BB1, composite Z-rotations, and a coupling-robust Ising gate),
//! simulates their propagators exactly as dense 2x2 / 4x4 complex matrices,
//! and characterizes robustness through propagator-fidelity sweeps and
//! numerical infidelity-order fits.
//!
//! Everything is a pure function of its inputs; all values are immutable
//! after construction and safe to share between threads.

pub mod error;
pub mod pulse;
pub mod sequences;
pub mod sweep;
pub mod two_qubit;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
pub use pulse::{realize, realize_sequence, ErrorModel, Pulse, PulseSequence};
pub use sequences::{bb1, composite_z, corpse, naive, tycko90, Bb1Placement, CorpseParams};
pub use sweep::{fit_order, sweep, ErrorAxis, GateHandle, OrderFit, SweepResult, SweepSpec};
pub use two_qubit::{
    bb1_ising, controlled_z, coupling_pulse, free_evolution, hamiltonian, spin_echo_coupling,
    zz_evolution, CouplingErrorModel, TwoSpinSystem,
};
pub use unitary::{compose, fidelity, phase_distance, rot, rot_z, CMatrix, Unitary};
