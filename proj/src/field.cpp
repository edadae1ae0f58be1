#include "hocus/field.hpp"

#include <cmath>

namespace hocus {

double l1_error(const CellField& field, int component, const Grid2D& grid,
                const std::function<double(double, double)>& reference) {
    double sum = 0.0;
    for (int j = 0; j < field.ny(); ++j)
        for (int i = 0; i < field.nx(); ++i)
            sum += std::abs(field(component, i, j) -
                            reference(grid.x.center(i), grid.y.center(j)));
    return sum / (static_cast<double>(field.nx()) * field.ny());
}

} // namespace hocus
