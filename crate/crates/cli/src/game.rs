use smale_core::game::{validate_npd, Action, NPlayerPayoffTable, PdGame, StateVector};
use smale_core::graph::{validate_network, NetworkGame};
use smale_core::scalar::Scalar;
use smale_core::ValidationReport;

/// Either game family behind one [`PdGame`] impl.
#[derive(Clone, Debug)]
pub enum AnyGame<T> {
    NPlayer(NPlayerPayoffTable<T>),
    Network(NetworkGame<T>),
}

impl<T: Scalar> AnyGame<T> {
    pub fn validate(&self, tol: T) -> ValidationReport {
        match self {
            AnyGame::NPlayer(t) => validate_npd(t, tol),
            AnyGame::Network(g) => validate_network(g, tol),
        }
    }

    pub fn is_network(&self) -> bool {
        matches!(self, AnyGame::Network(_))
    }
}

macro_rules! delegate {
    ($self:ident, $g:ident => $e:expr) => {
        match $self {
            AnyGame::NPlayer($g) => $e,
            AnyGame::Network($g) => $e,
        }
    };
}

impl<T: Scalar> PdGame<T> for AnyGame<T> {
    fn player_count(&self) -> usize {
        delegate!(self, g => g.player_count())
    }

    fn payoff_dim(&self) -> usize {
        delegate!(self, g => g.payoff_dim())
    }

    fn payoff_into(&self, s: &[Action], out: &mut [T]) {
        delegate!(self, g => g.payoff_into(s, out))
    }

    fn payoff(&self, s: &[Action]) -> StateVector<T> {
        delegate!(self, g => g.payoff(s))
    }

    fn mu_coefficients(&self, player: usize) -> Vec<T> {
        delegate!(self, g => g.mu_coefficients(player))
    }

    fn mu(&self, player: usize, u: &[T]) -> T {
        delegate!(self, g => g.mu(player, u))
    }

    fn player_payoff(&self, player: usize, u: &[T]) -> T {
        delegate!(self, g => g.player_payoff(player, u))
    }

    fn coord_names(&self) -> Vec<String> {
        delegate!(self, g => g.coord_names())
    }
}
