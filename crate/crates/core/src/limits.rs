use std::sync::OnceLock;

/// Caps applied to every Groebner computation.
///
/// Exceeding a cap is reported as [`crate::Error::ResourceLimit`]; a computation
/// never returns a truncated basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 100_000,
            max_degree: 40,
        }
    }
}

impl Limits {
    /// Parses `pairs=N,degree=M` (either key may be omitted).
    pub fn parse(spec: &str) -> Option<Limits> {
        let mut limits = Limits::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=')?;
            let value: usize = value.trim().parse().ok()?;
            match key.trim() {
                "pairs" => limits.max_pairs = value,
                "degree" => limits.max_degree = value,
                _ => return None,
            }
        }
        Some(limits)
    }

    /// Limits from the `RALAB_LIMITS` environment variable, or the defaults.
    pub fn from_env() -> Limits {
        std::env::var("RALAB_LIMITS")
            .ok()
            .and_then(|s| Limits::parse(&s))
            .unwrap_or_default()
    }

    /// Process-wide limits, read once from the environment.
    pub fn global() -> Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        *GLOBAL.get_or_init(Limits::from_env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_limits() {
        assert_eq!(
            Limits::parse("pairs=10, degree=5"),
            Some(Limits {
                max_pairs: 10,
                max_degree: 5
            })
        );
        assert_eq!(Limits::parse("degree=7").unwrap().max_pairs, 100_000);
        assert_eq!(Limits::parse("bogus=1"), None);
        assert_eq!(Limits::parse("pairs=x"), None);
    }
}
