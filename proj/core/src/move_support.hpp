// Slot-level editing shared by the move sources.
#pragma once

#include <vector>

#include "gdl/gauss_diagram.hpp"
#include "gdl/moves.hpp"

namespace gdl::detail {

struct Insertion {
  Gap gap;
  std::vector<Slot> slots;
};

// Runs sharing a gap are inserted in the order given.
std::vector<Component> insert_runs(const GaussDiagram& d, const std::vector<Insertion>& runs);
std::vector<Component> remove_labels(const GaussDiagram& d, const std::vector<Label>& labels);

}  // namespace gdl::detail
