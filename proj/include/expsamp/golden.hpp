#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expsamp::golden {

struct row {
  long long param;
  const char* value;  // printed digits, verbatim
};

enum class method { classical, bspline2, jackson };

struct table {
  const char* id;
  double log_x;
  method how;
  int decimals;     // default printed decimals
  double tolerance; // acceptance tolerance against the printed value
  std::vector<row> rows;
};

inline const std::vector<table>& tables() {
  static const std::vector<table> all = {
      {"1a", 2.7, method::classical, 13, 5e-13,
       {{20, "0.0220621711295"},
        {40, "0.0220673420431"},
        {160, "0.0220680655055"},
        {640, "0.0220680767936"},
        {2560, "0.0220680769700"},
        {10240, "0.0220680769728"},
        {20480, "0.02206807697284"},
        {1310720, "0.02206807697284"}}},
      {"1b", 2.7, method::bspline2, 14, 5e-14,
       {{16, "0.02203184447881"},
        {32, "0.02205460079620"},
        {128, "0.02206723658951"},
        {512, "0.02206802441556"},
        {2048, "0.02206807368853"},
        {8192, "0.02206807676757"},
        {16384, "0.02206807693864"},
        {1048576, "0.02206807697284"}}},
      {"2a", -0.6, method::classical, 13, 5e-13,
       {{160, "0.3684198616659"},
        {320, "0.3684198642867"},
        {640, "0.3684198646143"},
        {1280, "0.3684198646552"},
        {2560, "0.3684198646603"},
        {5120, "0.3684198646610"},
        {10240, "0.3684198646611"}}},
      {"2b", -0.6, method::bspline2, 13, 5e-13,
       {{512, "0.3687223730165"},
        {4096, "0.3685332821791"},
        {32768, "0.3684387681848"},
        {1048576, "0.3684203077163"},
        {8388608, "0.3684199385036"},
        {33554432, "0.3684198692762"},
        {2199023255552, "0.3684198646611"}}},
      {"3a", 2.7, method::classical, 13, 5e-13,
       {{20, "0.0220621711295"},
        {40, "0.0220673420431"},
        {80, "0.0220679852089"},
        {160, "0.0220680655055"},
        {320, "0.0220680755395"},
        {640, "0.0220680767936"},
        {1280, "0.0220680769504"},
        {2560, "0.0220680769700"},
        {5120, "0.0220680769725"},
        {10240, "0.0220680769728"},
        {20480, "0.0220680769728"},
        {40960, "0.0220680769728"},
        {81920, "0.0220680769728"},
        {163840, "0.0220680769728"},
        {327680, "0.0220680769728"}}},
      {"3b", 2.7, method::jackson, 13, 1e-11,
       {{20, "0.0206901738326"},
        {40, "0.0216805928972"},
        {80, "0.0219658314674"},
        {160, "0.0220418453359"},
        {320, "0.0220614368310"},
        {640, "0.0220664082084"},
        {1280, "0.0220676602406"},
        {2560, "0.0220679743972"},
        {5120, "0.0220680530799"},
        {10240, "0.0220680727685"},
        {20480, "0.0220680776929"},
        {40960, "0.0220680789243"},
        {81920, "0.0220680792322"},
        {163840, "0.0220680793091"},
        {327680, "0.0220680793284"}}},
      {"4a", -0.6, method::classical, 13, 5e-13,
       {{20, "0.3684183377931"},
        {40, "0.3684196731679"},
        {80, "0.3684198407044"},
        {160, "0.3684198616659"},
        {320, "0.3684198642867"},
        {640, "0.3684198646143"},
        {1280, "0.3684198646552"},
        {2560, "0.3684198646603"},
        {5120, "0.3684198646610"},
        {10240, "0.3684198646611"},
        {20480, "0.3684198646611"},
        {40960, "0.3684198646611"}}},
      {"4b", -0.6, method::jackson, 13, 1e-11,
       {{20, "0.3638936971911"},
        {40, "0.3672463030803"},
        {80, "0.3681212476795"},
        {160, "0.3683445829700"},
        {320, "0.3684009916855"},
        {640, "0.3684151657259"},
        {1280, "0.3684187182187"},
        {2560, "0.3684196074648"},
        {5120, "0.3684198299166"},
        {10240, "0.3684198855471"},
        {20480, "0.3684198994569"},
        {40960, "0.3684199029346"}}},
  };
  return all;
}

inline const table& find(std::string_view id) {
  for (const auto& t : tables()) {
    if (id == t.id) return t;
  }
  throw std::invalid_argument("unknown table '" + std::string(id) + "'");
}

}  // namespace expsamp::golden
