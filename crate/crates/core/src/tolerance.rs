/// Default tolerance profile.
///
/// Every predicate in the crate is tolerance-parameterized; this bundle
/// carries one value per kind of decision so callers can override them
/// individually.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `‖g*Jg − J‖_max` bound for group membership.
    pub membership: f64,
    /// Relative residual bound `‖gv − λv‖/‖v‖` for reported eigenvectors.
    pub residual: f64,
    /// Single-linkage distance below which eigenvalues are merged.
    pub cluster: f64,
    /// Relative threshold for rank, kernel and minimal-polynomial tests.
    pub rank: f64,
    /// Relative bound used by commutation verdicts.
    pub verdict: f64,
    /// Relative singular-value threshold of the commutant solver.
    pub nullspace: f64,
    /// Relative band `|⟨v,v⟩| ≤ tol·‖v‖²` classifying a vector as light-like.
    pub signature: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        membership: 1e-9,
        residual: 1e-7,
        cluster: 1e-6,
        rank: 1e-9,
        verdict: 1e-7,
        nullspace: 1e-8,
        signature: 1e-8,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
