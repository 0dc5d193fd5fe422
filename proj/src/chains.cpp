#include "mcpower/chains.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace mcpower {

void FormalChain::add(const std::string& cell, const mpz_class& c) {
  mpz_class& v = terms[cell];
  v += c;
  if (v == 0) terms.erase(cell);
}

FormalChain& FormalChain::operator+=(const FormalChain& o) {
  for (const auto& [cell, c] : o.terms) add(cell, c);
  return *this;
}

FormalChain FormalChain::operator*(const mpz_class& c) const {
  FormalChain out;
  if (c == 0) return out;
  for (const auto& [cell, v] : terms) out.terms[cell] = v * c;
  return out;
}

bool FormalChain::is_zero() const { return terms.empty(); }

std::string FormalChain::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cell, c] : terms) {
    if (!first) os << " ";
    if (c >= 0 && !first) os << "+";
    os << c.get_str() << "*" << cell;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Associahedra
// ---------------------------------------------------------------------------

namespace {

// Lightweight nested-tree value type for cell surgery; empty = leaf.
struct Cell {
  std::vector<Cell> ch;
  bool leaf() const { return ch.empty(); }
};

Cell parse_cell(const std::string& s, size_t& pos) {
  if (pos >= s.size() || s[pos] != '(') throw input_error("cell parse: expected '('");
  ++pos;
  Cell c;
  while (pos < s.size() && s[pos] == '(') c.ch.push_back(parse_cell(s, pos));
  if (pos >= s.size() || s[pos] != ')') throw input_error("cell parse: expected ')'");
  ++pos;
  return c;
}

Cell parse_cell(const std::string& s) {
  size_t pos = 0;
  Cell c = parse_cell(s, pos);
  if (pos != s.size()) throw input_error("cell parse: trailing characters");
  return c;
}

void print_cell(const Cell& c, std::string& out) {
  out += '(';
  for (const Cell& k : c.ch) print_cell(k, out);
  out += ')';
}

std::string cell_str(const Cell& c) {
  std::string out;
  print_cell(c, out);
  return out;
}

int cell_dim(const Cell& c) {
  if (c.leaf()) return 0;
  int d = static_cast<int>(c.ch.size()) - 2;
  for (const Cell& k : c.ch) d += cell_dim(k);
  return d;
}

// Appends the boundary terms of `c`.  `prefix` is the sum of the reduced
// factor degrees (arity - 2) of internal vertices preceding the current one
// in root-first depth-first order; it is threaded through the recursion.
void cell_boundary(const Cell& c, int& prefix, const std::function<Cell(const Cell&)>& wrap,
                   FormalChain& out) {
  if (c.leaf()) return;
  const int a = static_cast<int>(c.ch.size());
  // Cumulative dimensions of the subtrees below this vertex: the inner
  // vertex created by a split is ordered right after the outer one in the
  // factor ordering, and commuting it past the factors sitting in the first
  // i subtrees costs a Koszul sign.
  std::vector<long> predim(a + 1, 0);
  for (int k = 0; k < a; ++k) predim[k + 1] = predim[k] + cell_dim(c.ch[k]);
  // Splits of this vertex.
  for (int j = 2; j <= a - 1; ++j)
    for (int i = 0; i + j <= a; ++i) {
      Cell inner;
      inner.ch.assign(c.ch.begin() + i, c.ch.begin() + i + j);
      Cell split;
      split.ch.assign(c.ch.begin(), c.ch.begin() + i);
      split.ch.push_back(inner);
      split.ch.insert(split.ch.end(), c.ch.begin() + i + j, c.ch.end());
      long e = static_cast<long>(a - i - j) * j + i + prefix + (j - 2) * predim[i];
      out.add(cell_str(wrap(split)), (e % 2 == 0) ? 1 : -1);
    }
  prefix += a - 2;
  // Recurse into children, wrapping them back into this vertex.
  for (size_t pos = 0; pos < c.ch.size(); ++pos) {
    auto wrap_child = [&, pos](const Cell& repl) {
      Cell t = c;
      t.ch[pos] = repl;
      return wrap(t);
    };
    cell_boundary(c.ch[pos], prefix, wrap_child, out);
  }
}

}  // namespace

std::string associahedron_top_cell(int d) {
  if (d < 2) throw input_error("associahedron_top_cell: need d >= 2");
  Cell c;
  c.ch.resize(d);
  return cell_str(c);
}

int associahedron_cell_dim(const std::string& cell) { return cell_dim(parse_cell(cell)); }

FormalChain associahedron_boundary_cell(const std::string& cell) {
  FormalChain out;
  Cell c = parse_cell(cell);
  int prefix = 0;
  cell_boundary(c, prefix, [](const Cell& x) { return x; }, out);
  return out;
}

FormalChain associahedron_boundary(const FormalChain& ch) {
  FormalChain out;
  for (const auto& [cell, c] : ch.terms) out += associahedron_boundary_cell(cell) * c;
  return out;
}

// ---------------------------------------------------------------------------
// MWW strata
// ---------------------------------------------------------------------------

namespace {

void mww_print(const MwwNode& n, std::string& out) {
  switch (n.kind) {
    case '*':
      out += '*';
      return;
    case 'S': {
      out += "S(";
      for (const MwwNode& k : n.ch) mww_print(k, out);
      out += ')';
      return;
    }
    case 'M': {
      // Group slots by color, ascending; empty colors disappear, which
      // implements the deletion identification for empty colors.
      out += "M(";
      std::vector<int> colors;
      for (const MwwNode& k : n.ch)
        if (std::find(colors.begin(), colors.end(), k.color) == colors.end())
          colors.push_back(k.color);
      std::sort(colors.begin(), colors.end());
      bool first = true;
      for (int col : colors) {
        if (!first) out += ';';
        first = false;
        out += std::to_string(col);
        out += ':';
        for (const MwwNode& k : n.ch)
          if (k.color == col) mww_print(k, out);
      }
      out += ')';
      return;
    }
    case 'L': {
      out += "L(";
      for (const MwwNode& k : n.ch) mww_print(k, out);
      out += ')';
      return;
    }
  }
  throw internal_error("mww_print: bad node kind");
}

// Slots of a mid vertex carrying the given color, in order.
std::vector<int> color_slots(const MwwNode& m, int color) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(m.ch.size()); ++i)
    if (m.ch[i].color == color) idx.push_back(i);
  return idx;
}

std::vector<int> mid_colors(const MwwNode& m) {
  std::vector<int> colors;
  for (const MwwNode& k : m.ch)
    if (std::find(colors.begin(), colors.end(), k.color) == colors.end())
      colors.push_back(k.color);
  std::sort(colors.begin(), colors.end());
  return colors;
}

// Keep a mid vertex's slots stably sorted by color.
void normalize_mid(MwwNode& m) {
  std::stable_sort(m.ch.begin(), m.ch.end(),
                   [](const MwwNode& a, const MwwNode& b) { return a.color < b.color; });
}

// All compositions of n into j parts >= 0.
void compositions(int n, int j, std::vector<int>& acc, std::vector<std::vector<int>>& out) {
  if (j == 1) {
    acc.push_back(n);
    out.push_back(acc);
    acc.pop_back();
    return;
  }
  for (int first = 0; first <= n; ++first) {
    acc.push_back(first);
    compositions(n - first, j - 1, acc, out);
    acc.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> acc;
  compositions(n, j, acc, out);
  return out;
}

void faces_of(const MwwNode& n, std::vector<MwwNode>& out);

// Faces obtained by degenerating the top vertex of `n`.
void top_faces(const MwwNode& n, std::vector<MwwNode>& out) {
  if (n.kind == '*') return;
  if (n.kind == 'L' || n.kind == 'S') {
    const int a = static_cast<int>(n.ch.size());
    for (int j = 2; j <= a - 1; ++j)
      for (int i = 0; i + j <= a; ++i) {
        MwwNode inner;
        inner.kind = n.kind;
        inner.color = n.color;
        inner.ch.assign(n.ch.begin() + i, n.ch.begin() + i + j);
        MwwNode split;
        split.kind = n.kind;
        split.color = n.color;
        split.ch.assign(n.ch.begin(), n.ch.begin() + i);
        split.ch.push_back(inner);
        split.ch.insert(split.ch.end(), n.ch.begin() + i + j, n.ch.end());
        out.push_back(split);
      }
    return;
  }
  // Mid vertex.
  std::vector<int> colors = mid_colors(n);
  // Small-scale faces: a block of j consecutive same-color slots bubbles
  // into a new small vertex.
  for (int col : colors) {
    std::vector<int> idx = color_slots(n, col);
    const int e = static_cast<int>(idx.size());
    for (int j = 2; j <= e; ++j)
      for (int i = 0; i + j <= e; ++i) {
        MwwNode bubble;
        bubble.kind = 'S';
        bubble.color = col;
        for (int t = i; t < i + j; ++t) bubble.ch.push_back(n.ch[idx[t]]);
        MwwNode m;
        m.kind = 'M';
        for (int s = 0; s < static_cast<int>(n.ch.size()); ++s) {
          if (n.ch[s].color != col) {
            m.ch.push_back(n.ch[s]);
            continue;
          }
          int t = static_cast<int>(std::find(idx.begin(), idx.end(), s) - idx.begin());
          if (t < i || t >= i + j)
            m.ch.push_back(n.ch[s]);
          else if (t == i)
            m.ch.push_back(bubble);
        }
        normalize_mid(m);
        out.push_back(m);
      }
  }
  // Mid-scale faces: the vertex splits into a large vertex with j mid
  // children; slots distribute to the rows preserving the order per color.
  const int total = static_cast<int>(n.ch.size());
  for (int j = 2; j <= total; ++j) {
    // Per-color compositions.
    std::vector<std::vector<std::vector<int>>> percolor;
    for (int col : colors)
      percolor.push_back(compositions(static_cast<int>(color_slots(n, col).size()), j));
    std::vector<int> pick(colors.size(), 0);
    for (;;) {
      std::vector<int> rowsum(j, 0);
      for (size_t ci = 0; ci < colors.size(); ++ci)
        for (int row = 0; row < j; ++row) rowsum[row] += percolor[ci][pick[ci]][row];
      bool ok = true;
      for (int row = 0; row < j; ++row) ok = ok && rowsum[row] > 0;
      if (ok) {
        MwwNode big;
        big.kind = 'L';
        big.ch.assign(j, MwwNode{'M', 0, {}});
        for (size_t ci = 0; ci < colors.size(); ++ci) {
          std::vector<int> idx = color_slots(n, colors[ci]);
          int consumed = 0;
          for (int row = 0; row < j; ++row)
            for (int t = 0; t < percolor[ci][pick[ci]][row]; ++t)
              big.ch[row].ch.push_back(n.ch[idx[consumed++]]);
        }
        for (MwwNode& m : big.ch) normalize_mid(m);
        out.push_back(big);
      }
      size_t ci = 0;
      while (ci < colors.size() && pick[ci] + 1 == static_cast<int>(percolor[ci].size())) {
        pick[ci] = 0;
        ++ci;
      }
      if (ci == colors.size()) break;
      ++pick[ci];
    }
  }
}

void faces_of(const MwwNode& n, std::vector<MwwNode>& out) {
  top_faces(n, out);
  for (size_t i = 0; i < n.ch.size(); ++i) {
    std::vector<MwwNode> sub;
    faces_of(n.ch[i], sub);
    for (MwwNode& f : sub) {
      MwwNode t = n;
      t.ch[i] = std::move(f);
      if (t.kind == 'M') normalize_mid(t);
      out.push_back(t);
    }
  }
}

}  // namespace

std::string MwwNode::str() const {
  std::string out;
  mww_print(*this, out);
  return out;
}

MwwNode mww_interior(const std::vector<int>& d) {
  MwwNode m;
  m.kind = 'M';
  for (int k = 0; k < static_cast<int>(d.size()); ++k) {
    if (d[k] < 0) throw input_error("mww_interior: negative color count");
    for (int t = 0; t < d[k]; ++t) m.ch.push_back(MwwNode{'*', k + 1, {}});
  }
  if (m.ch.empty()) throw input_error("mww_interior: need at least one point");
  normalize_mid(m);
  return m;
}

std::vector<MwwNode> mww_faces(const MwwNode& s) {
  std::vector<MwwNode> out;
  faces_of(s, out);
  return out;
}

std::vector<std::string> mww_strata(const std::vector<int>& d, int codim) {
  std::vector<MwwNode> level = {mww_interior(d)};
  for (int step = 0; step < codim; ++step) {
    std::vector<MwwNode> next;
    std::set<std::string> seen;
    for (const MwwNode& s : level)
      for (const MwwNode& f : mww_faces(s)) {
        std::string key = f.str();
        if (seen.insert(key).second) next.push_back(f);
      }
    level = std::move(next);
  }
  std::vector<std::string> out;
  for (const MwwNode& s : level) out.push_back(s.str());
  std::sort(out.begin(), out.end());
  return out;
}

int mww_type1_sign(const std::vector<int>& d, int k, int i, int j) {
  const int r = static_cast<int>(d.size());
  if (k < 0 || k >= r || j < 2 || j > d[k] || i < 0 || i + j > d[k])
    throw input_error("mww_type1_sign: bad indices");
  long tail = 0;
  for (int t = k + 1; t < r; ++t) tail += d[t];
  long head = 0;
  for (int t = 0; t < k; ++t) head += d[t];
  long e = (d[k] - i - j + tail) * static_cast<long>(j) + (head + i + 1);
  return (e % 2 == 0) ? 1 : -1;
}

int mww_type2_sign(const std::vector<std::vector<int>>& rows) {
  const int j = static_cast<int>(rows.size());
  if (j < 2) throw input_error("mww_type2_sign: need >= 2 rows");
  const int r = static_cast<int>(rows[0].size());
  long e = 0;
  for (int i1 = 0; i1 < j; ++i1)
    for (int i2 = i1 + 1; i2 < j; ++i2)
      for (int k1 = 0; k1 < r; ++k1)
        for (int k2 = 0; k2 < k1; ++k2)
          e += static_cast<long>(rows[i1][k1]) * rows[i2][k2];
  for (int i = 0; i < j; ++i) {
    long rowsum = 0;
    for (int k = 0; k < r; ++k) rowsum += rows[i][k];
    e += static_cast<long>(j - 1 - i) * (rowsum - 1);
  }
  return (e % 2 == 0) ? 1 : -1;
}

FormalChain mww_boundary(const std::vector<int>& d) {
  const int r = static_cast<int>(d.size());
  MwwNode interior = mww_interior(d);
  FormalChain out;
  // Small-scale faces.
  for (int k = 0; k < r; ++k)
    for (int j = 2; j <= d[k]; ++j)
      for (int i = 0; i + j <= d[k]; ++i) {
        MwwNode bubble;
        bubble.kind = 'S';
        bubble.color = k + 1;
        for (int t = 0; t < j; ++t) bubble.ch.push_back(MwwNode{'*', k + 1, {}});
        MwwNode m;
        m.kind = 'M';
        for (int c = 0; c < r; ++c) {
          int keep = (c == k) ? d[c] - j : d[c];
          int before = (c == k) ? i : keep;
          for (int t = 0; t < before; ++t) m.ch.push_back(MwwNode{'*', c + 1, {}});
          if (c == k) {
            m.ch.push_back(bubble);
            for (int t = 0; t < d[c] - i - j; ++t) m.ch.push_back(MwwNode{'*', c + 1, {}});
          }
        }
        normalize_mid(m);
        out.add(m.str(), mww_type1_sign(d, k, i, j));
      }
  // Mid-scale faces.
  const int total = [&] {
    int t = 0;
    for (int x : d) t += x;
    return t;
  }();
  for (int j = 2; j <= total; ++j) {
    std::vector<std::vector<std::vector<int>>> percolor;
    for (int k = 0; k < r; ++k) percolor.push_back(compositions(d[k], j));
    std::vector<int> pick(r, 0);
    for (;;) {
      std::vector<std::vector<int>> rows(j, std::vector<int>(r, 0));
      for (int k = 0; k < r; ++k)
        for (int row = 0; row < j; ++row) rows[row][k] = percolor[k][pick[k]][row];
      bool ok = true;
      for (int row = 0; row < j; ++row) {
        int s = 0;
        for (int k = 0; k < r; ++k) s += rows[row][k];
        ok = ok && s > 0;
      }
      if (ok) {
        MwwNode big;
        big.kind = 'L';
        for (int row = 0; row < j; ++row) {
          MwwNode m;
          m.kind = 'M';
          for (int k = 0; k < r; ++k)
            for (int t = 0; t < rows[row][k]; ++t) m.ch.push_back(MwwNode{'*', k + 1, {}});
          normalize_mid(m);
          big.ch.push_back(m);
        }
        out.add(big.str(), mww_type2_sign(rows));
      }
      int k = 0;
      while (k < r && pick[k] + 1 == static_cast<int>(percolor[k].size())) {
        pick[k] = 0;
        ++k;
      }
      if (k == r) break;
      ++pick[k];
    }
  }
  return out;
}

}  // namespace mcpower
