#include "heavyloc/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "heavyloc/error.hpp"
#include "heavyloc/format.hpp"

namespace heavyloc {

std::string to_string(Model model) {
  switch (model) {
    case Model::I: return "I";
    case Model::II: return "II";
    case Model::III: return "III";
    case Model::IV: return "IV";
  }
  return "?";
}

Model model_from_string(const std::string& name) {
  if (name == "I") return Model::I;
  if (name == "II") return Model::II;
  if (name == "III") return Model::III;
  if (name == "IV") return Model::IV;
  throw ParameterError("unknown model '" + name + "' (expected I, II, III or IV)");
}

double ModelConfig::primary_alpha() const {
  switch (model) {
    case Model::I:
    case Model::II: return alpha1;
    case Model::III: return alpha2;
    case Model::IV: return std::min(alpha1, alpha2);
  }
  return alpha1;
}

std::vector<std::string> config_diagnostics(const ModelConfig& config) {
  std::vector<std::string> out;
  auto check_alpha = [&](double a, const char* name) {
    if (!(a > 0.0 && a < 1.0)) out.push_back(std::string(name) + ": alpha must lie in (0,1)");
  };
  if (config.model != Model::III) check_alpha(config.alpha1, "alpha1");
  if (config.model == Model::III || config.model == Model::IV) check_alpha(config.alpha2, "alpha2");
  if (!(config.theta0 >= 0.0 && config.theta0 < std::numbers::pi)) out.push_back("theta0 must lie in [0, pi)");
  if (!std::isfinite(config.energy)) {
    out.push_back("energy must be finite");
  } else if ((config.model == Model::I || config.model == Model::III) && !(config.energy > 0.0)) {
    out.push_back("Models I and III require energy > 0");
  }
  return out;
}

void require_valid(const ModelConfig& config) {
  const auto diags = config_diagnostics(config);
  if (!diags.empty()) throw ParameterError(diags.front());
}

std::size_t Realization::pieces_through_bump(std::size_t n) const {
  return (model == Model::III || model == Model::IV) ? 2 * n : n;
}

namespace {

void push_piece(Realization& r, Piece piece, double& position) {
  if (!(piece.length > 0.0) || !std::isfinite(piece.length)) throw SaturationError("non-finite or empty piece length");
  if (!std::isfinite(piece.value)) throw SaturationError("bump height overflowed");
  r.offsets.push_back(position);
  r.pieces.push_back(piece);
  position = position + piece.length;
}

}  // namespace

Realization assemble(Model model, std::span<const double> heights, std::span<const double> gaps,
                     std::span<const int> signs) {
  Realization r;
  r.model = model;
  const bool with_gaps = model == Model::III || model == Model::IV;
  const std::size_t n = model == Model::III ? gaps.size() : heights.size();
  if (with_gaps && gaps.size() < n) throw ParameterError("gap sequence shorter than bump sequence");
  if (model == Model::IV && signs.size() < n) throw ParameterError("sign sequence shorter than bump sequence");
  r.pieces.reserve(with_gaps ? 2 * n : n);
  r.offsets.reserve(r.pieces.capacity());
  double position = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto index = static_cast<std::int64_t>(i + 1);
    if (with_gaps) {
      r.gap_lengths.push_back(gaps[i]);
      push_piece(r, {0.0, gaps[i], index, PieceKind::gap}, position);
    }
    double value = 1.0;
    switch (model) {
      case Model::I: value = heights[i]; break;
      case Model::II: value = -heights[i]; break;
      case Model::III: value = 1.0; break;
      case Model::IV: value = signs[i] == 0 ? heights[i] : -heights[i]; break;
    }
    if (model != Model::III) r.bump_heights.push_back(heights[i]);
    if (model == Model::IV) r.signs.push_back(signs[i]);
    push_piece(r, {value, 1.0, index, PieceKind::bump}, position);
    r.bump_ends.push_back(position);
  }
  return r;
}

Realization generate(const ModelConfig& config, std::size_t n_bumps, RngStream& stream) {
  require_valid(config);
  if (n_bumps < 1) throw ParameterError("n_bumps must be at least 1");
  std::vector<double> heights, gaps;
  std::vector<int> signs;
  switch (config.model) {
    case Model::I:
    case Model::II: {
      const TailLaw law(config.alpha1, TailKind::bump_height);
      heights.reserve(n_bumps);
      for (std::size_t i = 0; i < n_bumps; ++i) heights.push_back(sample_bump_height(law, stream));
      break;
    }
    case Model::III: {
      const TailLaw law(config.alpha2, TailKind::gap_length);
      gaps.reserve(n_bumps);
      for (std::size_t i = 0; i < n_bumps; ++i) gaps.push_back(sample_gap_length(law, stream));
      break;
    }
    case Model::IV: {
      const TailLaw bump_law(config.alpha1, TailKind::bump_height);
      const TailLaw gap_law(config.alpha2, TailKind::gap_length);
      for (std::size_t i = 0; i < n_bumps; ++i) {
        gaps.push_back(sample_gap_length(gap_law, stream));
        heights.push_back(sample_bump_height(bump_law, stream));
        signs.push_back(stream.bernoulli_half() ? 1 : 0);
      }
      break;
    }
  }
  return assemble(config.model, heights, gaps, signs);
}

Realization free_realization(std::size_t n, double piece_length) {
  Realization r;
  r.model = Model::I;
  double position = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    push_piece(r, {0.0, piece_length, static_cast<std::int64_t>(i + 1), PieceKind::bump}, position);
    r.bump_heights.push_back(0.0);
    r.bump_ends.push_back(position);
  }
  return r;
}

std::size_t l_index(const Realization& realization, double x) {
  if (realization.pieces.empty()) throw ParameterError("empty realization");
  if (!(x >= 0.0 && x <= realization.total_length())) throw ParameterError("coordinate outside the realization");
  const auto it = std::upper_bound(realization.offsets.begin(), realization.offsets.end(), x);
  return static_cast<std::size_t>(it - realization.offsets.begin()) - 1;
}

Realization truncate(const Realization& realization, double length) {
  if (!(length > 0.0 && length <= realization.total_length())) {
    throw ParameterError("truncation length outside (0, total length]");
  }
  Realization out;
  out.model = realization.model;
  for (std::size_t i = 0; i < realization.pieces.size(); ++i) {
    const double start = realization.offsets[i];
    if (start >= length) break;
    Piece p = realization.pieces[i];
    const double end = start + p.length;
    if (end > length) p.length = length - start;
    out.pieces.push_back(p);
    out.offsets.push_back(start);
  }
  for (double e : realization.bump_ends) {
    if (e <= length) out.bump_ends.push_back(e);
  }
  const std::size_t nb = out.bump_ends.size();
  auto head = [nb](const auto& v) { return std::vector(v.begin(), v.begin() + std::min(nb, v.size())); };
  out.bump_heights = head(realization.bump_heights);
  out.gap_lengths = head(realization.gap_lengths);
  out.signs = head(realization.signs);
  return out;
}

void write_realization_csv(std::ostream& out, const Realization& realization) {
  out << "index,kind,value,length\n";
  for (const auto& p : realization.pieces) {
    out << p.index << ',' << (p.kind == PieceKind::bump ? "bump" : "gap") << ',' << format_double(p.value) << ','
        << format_double(p.length) << '\n';
  }
}

}  // namespace heavyloc
