use crate::matrix::{re, DenseMatrix, C64};

/// Complex plane rotation `G = [[c, s], [−s̄, c]]` with real `c`.
#[derive(Clone, Copy, Debug)]
pub struct Rotation {
    pub c: f64,
    pub s: C64,
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        c: 1.0,
        s: C64 { re: 0.0, im: 0.0 },
    };

    /// Rotation with `G [a; b] = [r; 0]`.
    pub fn zeroing(a: C64, b: C64) -> Self {
        if b.norm() == 0.0 {
            return Self::IDENTITY;
        }
        if a.norm() == 0.0 {
            return Self { c: 0.0, s: re(1.0) };
        }
        let an = a.norm();
        let r = an.hypot(b.norm());
        Self {
            c: an / r,
            s: (a / an) * b.conj() / r,
        }
    }

    /// Rows `p`, `q` of `m` over columns `cols` become `G [row p; row q]`.
    pub fn apply_rows(&self, m: &mut DenseMatrix, p: usize, q: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(p, j)];
            let y = m[(q, j)];
            m[(p, j)] = x * self.c + self.s * y;
            m[(q, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `p`, `q` of `m` over rows `rows` become `[col p, col q] Gᴴ`.
    pub fn apply_cols(&self, m: &mut DenseMatrix, p: usize, q: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let x = m[(i, p)];
            let y = m[(i, q)];
            m[(i, p)] = x * self.c + y * self.s.conj();
            m[(i, q)] = -x * self.s + y * self.c;
        }
    }

    /// Rotation whose column action `[x, y] Gᴴ` sends the row pair `(x, y)` to `(r, 0)`.
    pub fn zeroing_in_row(x: C64, y: C64) -> Self {
        Self::zeroing(x.conj(), y.conj())
    }
}
