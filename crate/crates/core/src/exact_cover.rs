//! Exact cover by dancing links.

/// A sparse 0/1 matrix prepared for Algorithm X.
pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    row_of: Vec<usize>,
    size: Vec<usize>,
    columns: usize,
    rows: usize,
}

impl ExactCover {
    /// Node 0 is the root header, nodes `1..=columns` are column headers.
    pub fn new(columns: usize) -> Self {
        let n = columns + 1;
        let mut cover = Self {
            left: (0..n).map(|i| (i + n - 1) % n).collect(),
            right: (0..n).map(|i| (i + 1) % n).collect(),
            up: (0..n).collect(),
            down: (0..n).collect(),
            column: (0..n).collect(),
            row_of: vec![usize::MAX; n],
            size: vec![0; n],
            columns,
            rows: 0,
        };
        cover.size[0] = usize::MAX;
        cover
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Appends a row covering the given columns; returns its index.
    pub fn add_row(&mut self, cols: &[usize]) -> usize {
        let row = self.rows;
        self.rows += 1;
        let first = self.left.len();
        for (k, &c) in cols.iter().enumerate() {
            assert!(c < self.columns, "column {c} out of range");
            let header = c + 1;
            let node = self.left.len();
            let prev = if k == 0 { node } else { node - 1 };
            self.left.push(prev);
            self.right.push(first);
            self.right[prev] = node;
            self.left[first] = node;
            self.up.push(self.up[header]);
            self.down.push(header);
            let above = self.up[header];
            self.down[above] = node;
            self.up[header] = node;
            self.column.push(header);
            self.row_of.push(row);
            self.size[header] += 1;
        }
        row
    }

    fn cover(&mut self, c: usize) {
        self.right[self.left[c]] = self.right[c];
        self.left[self.right[c]] = self.left[c];
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                self.down[self.up[j]] = self.down[j];
                self.up[self.down[j]] = self.up[j];
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.column[j]] += 1;
                self.down[self.up[j]] = j;
                self.up[self.down[j]] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        self.right[self.left[c]] = c;
        self.left[self.right[c]] = c;
    }

    /// Visits every exact cover (as sorted row indices) until `visit` returns `false`.
    pub fn solve(&mut self, mut visit: impl FnMut(&[usize]) -> bool) {
        let mut partial = Vec::new();
        self.search(&mut partial, &mut visit);
    }

    fn search(
        &mut self,
        partial: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if self.right[0] == 0 {
            let mut rows: Vec<usize> = partial.iter().map(|&n| self.row_of[n]).collect();
            rows.sort_unstable();
            return visit(&rows);
        }
        // smallest column first
        let mut c = self.right[0];
        let mut j = self.right[c];
        while j != 0 {
            if self.size[j] < self.size[c] {
                c = j;
            }
            j = self.right[j];
        }
        if self.size[c] == 0 {
            return true;
        }
        self.cover(c);
        let mut r = self.down[c];
        let mut keep_going = true;
        while r != c && keep_going {
            partial.push(r);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.column[j]);
                j = self.right[j];
            }
            keep_going = self.search(partial, visit);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.column[j]);
                j = self.left[j];
            }
            partial.pop();
            r = self.down[r];
        }
        self.uncover(c);
        keep_going
    }

    pub fn all_solutions(&mut self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.solve(|rows| {
            out.push(rows.to_vec());
            true
        });
        out.sort();
        out
    }
}
