use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::GaussI64;

/// Four information symbols, one per lattice basis vector.
pub type SymbolVector = [GaussI64; 4];

/// Unnormalized square QAM on the odd-integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{+-1 +- i}`
    Qam4,
    /// `{+-1, +-3}^2`
    Qam16,
}

impl Alphabet {
    pub fn from_order(m: u32) -> Result<Self> {
        match m {
            4 => Ok(Alphabet::Qam4),
            16 => Ok(Alphabet::Qam16),
            _ => Err(Error::InvalidConfig(format!("unsupported QAM order {m} (expected 4 or 16)"))),
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Alphabet::Qam4 => 4,
            Alphabet::Qam16 => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Qam4 => "4-QAM",
            Alphabet::Qam16 => "16-QAM",
        }
    }

    /// Largest coordinate magnitude.
    pub fn max_level(self) -> i64 {
        match self {
            Alphabet::Qam4 => 1,
            Alphabet::Qam16 => 3,
        }
    }

    /// Mean symbol energy.
    pub fn energy(self) -> f64 {
        match self {
            Alphabet::Qam4 => 2.0,
            Alphabet::Qam16 => 10.0,
        }
    }

    pub fn levels(self) -> Vec<i64> {
        let l = self.max_level();
        (-l..=l).step_by(2).collect()
    }

    pub fn points(self) -> Vec<GaussI64> {
        let lv = self.levels();
        lv.iter().flat_map(|&re| lv.iter().map(move |&im| GaussI64::new(re, im))).collect()
    }

    fn level_ok(self, v: i64) -> bool {
        v.rem_euclid(2) == 1 && v.abs() <= self.max_level()
    }

    pub fn contains(self, g: GaussI64) -> bool {
        self.level_ok(g.re) && self.level_ok(g.im)
    }

    pub fn check(self, s: &SymbolVector) -> Result<()> {
        match s.iter().find(|g| !self.contains(**g)) {
            Some(g) => Err(Error::OutOfAlphabet(format!("{}{:+}i", g.re, g.im), self.name())),
            None => Ok(()),
        }
    }

    fn clamp_level(self, v: i64) -> i64 {
        let l = self.max_level();
        let odd = if v.rem_euclid(2) == 1 { v } else { v + 1 };
        odd.clamp(-l, l)
    }

    /// Nearest alphabet point to a point of the odd grid (or any Gaussian integer).
    pub fn clamp(self, g: GaussI64) -> GaussI64 {
        GaussI64::new(self.clamp_level(g.re), self.clamp_level(g.im))
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> GaussI64 {
        let side = self.max_level() as i32 + 1;
        let mut level = || 2 * rng.random_range(0..side) as i64 - self.max_level();
        GaussI64::new(level(), level())
    }

    pub fn random_vector<R: Rng + ?Sized>(self, rng: &mut R) -> SymbolVector {
        std::array::from_fn(|_| self.random(rng))
    }

    /// Every symbol vector, in lexicographic order of `points()`.
    pub fn all_vectors(self) -> Vec<SymbolVector> {
        let pts = self.points();
        let n = pts.len();
        (0..n.pow(4))
            .map(|mut k| {
                std::array::from_fn(|_| {
                    let p = pts[k % n];
                    k /= n;
                    p
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn energies_match_points() {
        for a in [Alphabet::Qam4, Alphabet::Qam16] {
            let p = a.points();
            assert_eq!(p.len() as u32, a.order());
            let e: f64 = p.iter().map(|g| (g.norm_sqr()) as f64).sum::<f64>() / p.len() as f64;
            assert_eq!(e, a.energy());
        }
    }

    #[test]
    fn clamp_maps_to_nearest_point() {
        let a = Alphabet::Qam16;
        assert_eq!(a.clamp(GaussI64::new(5, -7)), GaussI64::new(3, -3));
        assert_eq!(a.clamp(GaussI64::new(1, -1)), GaussI64::new(1, -1));
        assert_eq!(Alphabet::Qam4.clamp(GaussI64::new(-3, 3)), GaussI64::new(-1, 1));
    }

    #[test]
    fn membership() {
        assert!(Alphabet::Qam4.contains(GaussI64::new(1, -1)));
        assert!(!Alphabet::Qam4.contains(GaussI64::new(3, 1)));
        assert!(!Alphabet::Qam16.contains(GaussI64::new(0, 1)));
        assert!(Alphabet::Qam4.check(&[GaussI64::new(0, 0); 4]).is_err());
    }

    #[test]
    fn random_symbols_cover_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            let g = Alphabet::Qam16.random(&mut rng);
            assert!(Alphabet::Qam16.contains(g));
            seen.insert(g);
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn enumerates_codebook() {
        let v = Alphabet::Qam4.all_vectors();
        assert_eq!(v.len(), 256);
        assert_eq!(v.iter().collect::<std::collections::HashSet<_>>().len(), 256);
    }
}
