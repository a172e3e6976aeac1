#include "gcnn/gconv.hpp"

#include <vector>

namespace gcnn {

TransformIndexTable build_transform_index_table(GroupId group, int s_in, int n) {
  if (n < 1 || n % 2 == 0)
    throw InvalidArgument("transform index table needs odd n");
  const int s_total = stabilizer_size(group);
  if (s_in != 1 && s_in != s_total)
    throw InvalidArgument("s_in must be 1 or |stabilizer|");
  TransformIndexTable table;
  table.group = group;
  table.s_out = s_total;
  table.s_in = s_in;
  table.n = n;
  table.flat.resize(static_cast<std::size_t>(s_total) * s_in * n * n);
  const int rho = (n - 1) / 2;
  const auto& stab = stabilizer_elements(group);
  for (int so = 0; so < s_total; ++so) {
    const GroupElement sinv = inverse(stab[so]);
    for (int si = 0; si < s_in; ++si) {
      // First-layer filters are planar: the input index carries no
      // stabilizer coordinate, so the source s is forced to 0.
      const GroupElement& in_stab = (s_in == 1) ? identity(group) : stab[si];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const GroupElement h =
              make_element(group, in_stab.m, in_stab.r, b - rho, a - rho);
          const GroupElement g = compose(sinv, h);
          const int sbar =
              (s_in == 1) ? 0 : stabilizer_index(group, g.m, g.r);
          const int abar = g.v + rho;
          const int bbar = g.u + rho;
          table.flat[table.index(so, si, a, b)] =
              static_cast<std::int32_t>((sbar * n + abar) * n + bbar);
        }
    }
  }
  return table;
}

}  // namespace gcnn
