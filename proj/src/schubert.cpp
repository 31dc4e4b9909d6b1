#include "strata/schubert.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace strata {

std::string to_string(FieldCase f) { return f == FieldCase::Real ? "real" : "hermitian"; }

FieldCase parse_field_case(std::string_view s) {
  if (s == "real") return FieldCase::Real;
  if (s == "hermitian") return FieldCase::Hermitian;
  throw std::invalid_argument("unknown field case '" + std::string(s) + "'");
}

long long binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
    weight_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return Partition{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = comma + 1;
  }
  return Partition(std::move(parts));
}

std::string Partition::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

BoxContext::BoxContext(int k, int n) : k_(k), n_(n) {
  if (k < 0 || n < 0 || k > n)
    throw std::invalid_argument("box context requires 0 <= k <= n, got k=" + std::to_string(k) +
                                " n=" + std::to_string(n));
}

bool BoxContext::fits(const Partition& p) const noexcept {
  return static_cast<int>(p.length()) <= k_ && p.largest() <= width();
}

void BoxContext::require_fits(const Partition& p) const {
  if (!fits(p))
    throw BoxViolation("partition (" + p.str() + ") does not fit the " + std::to_string(k_) + "x" +
                       std::to_string(width()) + " box");
}

// ---------------------------------------------------------------------------

SchubertSymbol::SchubertSymbol(std::string_view bits) {
  bits_.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("Schubert symbol must be a 0/1 string");
    bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  index_units();
}

SchubertSymbol::SchubertSymbol(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("Schubert symbol entries must be 0 or 1");
  index_units();
}

void SchubertSymbol::index_units() {
  units_.clear();
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) units_.push_back(static_cast<int>(i) + 1);
}

std::string SchubertSymbol::str() const {
  std::string out;
  for (auto b : bits_) out += static_cast<char>('0' + b);
  return out;
}

Partition partition_from_symbol(const SchubertSymbol& sym) {
  std::vector<int> parts;
  auto d = sym.unit_positions();
  for (std::size_t i = 0; i < d.size(); ++i) {
    int zeros_left = d[i] - static_cast<int>(i + 1);
    if (zeros_left > 0) parts.push_back(zeros_left);
  }
  std::reverse(parts.begin(), parts.end());
  return Partition(std::move(parts));
}

SchubertSymbol symbol_from_partition(const Partition& p, const BoxContext& box) {
  box.require_fits(p);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(box.n()), 0);
  // zeros-left counts in increasing order, padded with leading zeros to length k
  const int k = box.k();
  for (int i = 0; i < k; ++i) {
    int q = p[static_cast<std::size_t>(k - 1 - i)];
    bits[static_cast<std::size_t>(i + q)] = 1;
  }
  return SchubertSymbol(std::move(bits));
}

// ---------------------------------------------------------------------------

namespace {

// Partitions of `remaining` into at most `rows` parts, each <= `cap`.
void partitions_of(int remaining, int rows, int cap, std::vector<int>& prefix,
                   std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (rows == 0) return;
  for (int part = std::min(cap, remaining); part >= 1; --part) {
    if (static_cast<long long>(part) * rows < remaining) break;
    prefix.push_back(part);
    partitions_of(remaining - part, rows - 1, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Partition>> enumerate_box(const BoxContext& box) {
  std::vector<std::vector<Partition>> graded(static_cast<std::size_t>(box.area()) + 1);
  std::vector<int> prefix;
  for (int w = 0; w <= box.area(); ++w)
    partitions_of(w, box.k(), box.width(), prefix, graded[static_cast<std::size_t>(w)]);
  return graded;
}

std::vector<Partition> box_partitions(const BoxContext& box) {
  std::vector<Partition> flat;
  for (auto& layer : enumerate_box(box))
    for (auto& p : layer) flat.push_back(std::move(p));
  return flat;
}

int cell_dimension(const Partition& p, const BoxContext& box, FieldCase field) {
  box.require_fits(p);
  return cell_factor(field) * p.weight();
}

std::map<int, long long> betti_grassmannian(const BoxContext& box, FieldCase field) {
  std::map<int, long long> betti;
  auto graded = enumerate_box(box);
  for (std::size_t w = 0; w < graded.size(); ++w)
    if (!graded[w].empty())
      betti[cell_factor(field) * static_cast<int>(w)] += static_cast<long long>(graded[w].size());
  return betti;
}

std::vector<Partition> pieri(int a, const Partition& p, const BoxContext& box) {
  if (a < 1) throw std::invalid_argument("pieri requires a >= 1");
  box.require_fits(p);

  // mu_1 in [p_1, width], mu_i in [p_i, p_{i-1}] for i >= 2, at most k rows,
  // total added = a.
  std::vector<Partition> out;
  const int rows = std::min(static_cast<int>(p.length()) + 1, box.k());
  std::vector<int> mu;
  std::function<void(int, int)> grow = [&](int row, int left) {
    if (row == rows) {
      if (left == 0) {
        std::vector<int> parts;
        for (int m : mu)
          if (m > 0) parts.push_back(m);
        out.emplace_back(std::move(parts));
      }
      return;
    }
    const auto r = static_cast<std::size_t>(row);
    const int lo = p[r];
    const int hi = row == 0 ? box.width() : p[r - 1];
    for (int m = lo; m <= hi && m - lo <= left; ++m) {
      mu.push_back(m);
      grow(row + 1, left - (m - lo));
      mu.pop_back();
    }
  };
  grow(0, a);
  std::sort(out.begin(), out.end());
  return out;
}

Partition rho_k(const Partition& p, int k, int n) {
  if (k < 1 || k > n) throw DomainViolation("rho_k requires 1 <= k <= n");
  if (static_cast<int>(p.length()) >= k || p.largest() > n - k)
    throw DomainViolation("partition (" + p.str() + ") is not a Schubert class of Gr_" +
                          std::to_string(k - 1) + "(" + std::to_string(n - 1) + ")");
  return p;
}

bool in_image_rho(std::span<const Partition> ps, int k) {
  return std::all_of(ps.begin(), ps.end(),
                     [k](const Partition& p) { return static_cast<int>(p.length()) <= k - 1; });
}

}  // namespace strata
