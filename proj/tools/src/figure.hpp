#pragma once

#include <string>

#include "table.hpp"

namespace qmir::cli {

// Which layout/axis convention to use for a table.
enum class FigureKind {
  phase_scan,          // two panels: normalized phases, log transmission
  correlation,         // C curves vs z2/w0, dashed diagonal N
  strain_correlation,  // step-scaled Q curves vs z2/w0
  noise_ratio,         // F curves vs z2/w0
  psd,                 // log-log spectral density
};

// Renders a deterministic, self-contained SVG. Throws std::invalid_argument
// when the table is empty or lacks the columns the kind requires.
std::string emit_figure(const Table& t, FigureKind kind,
                        const std::string& title);

}  // namespace qmir::cli
