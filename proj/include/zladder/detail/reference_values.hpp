#pragma once

// Frozen mpmath reference values; generated by
// tools/gen_reference_data.py, do not edit by hand.

#include <cstddef>

namespace zladder::detail {

struct RefPair { double x; double y; };

inline constexpr RefPair kRefZ[56] = {
    {10.000000000000002, -1.5491945461810224},
    {11.35222579169551, -1.4406083183597465},
    {12.887303042563673, -0.8555258289138191},
    {14.629957398518725, 0.4060769114833581},
    {16.608257971087077, 1.944016839334235},
    {18.854069449450723, 2.0788370969542975},
    {21.40356534824727, -0.42080195864409364},
    {24.29781065806129, -0.8546824691281326},
    {27.583423283417737, 2.8346750535542267},
    {31.313324922126906, -0.8320776846564225},
    {35.54759348047109, 2.9238776554050134},
    {40.354430754171084, -0.8475194100075908},
    {45.81126096166912, -3.6329468616208676},
    {52.005977823915394, -1.8040630790058207},
    {59.03836027749967, -0.46618590785725394},
    {67.02167962416436, 0.10298076770013098},
    {76.08452400321916, 0.5035446222460929},
    {86.372869573822, 1.7987522678880865},
    {98.05243176786948, -2.3605754862766486},
    {111.31133448536713, -0.2924968062468555},
    {126.36314022528298, 4.238441122504204},
    {143.45028995850942, -1.3613854961061718},
    {162.84800814931887, 0.7164381114533498},
    {184.86873582389373, -0.008635146493663209},
    {209.86716308981505, 1.1803503270595042},
    {238.24594216581647, 1.3001983465277305},
    {270.4621729421577, -1.669025047561272},
    {307.03476553519744, -0.8138104951536284},
    {348.5527984255853, -2.2365568174659476},
    {395.6850068054573, 0.23530986628314737},
    {449.1905539644123, 0.0993703424882369},
    {509.93125921007965, -1.353267647233656},
    {578.885479279643, 1.2470664105604523},
    {657.1638668316376, 0.6562003868512446},
    {746.0272598416465, 1.189511004510491},
    {846.9069900482269, 2.7077347432102212},
    {961.4279375592688, 2.4388187533560326},
    {1091.4347029616945, 0.7736785723057079},
    {1239.021318491328, -0.9415715178326988},
    {1406.5649768237831, -3.375985931172274},
    {1596.7643207594538, -2.0862425946525978},
    {1812.6829105384622, 3.200477823540253},
    {2057.79856891804, -6.874999966593077},
    {2336.059398818549, -0.293650186527818},
    {2651.9473758200625, -0.5729719900838359},
    {3010.550539800372, 0.25453612021529376},
    {3417.644948512463, 2.181308299410253},
    {3879.7877131361065, 2.3145955659777173},
    {4404.422614336698, 9.31530714554656},
    {5000.000000000004, -0.8042572363419614},
    {20.0, 1.1478424121851973},
    {100.0, 2.6926970566644637},
    {1000.0, 0.9977946375215866},
    {10000.0, -0.34139472423120854},
    {100000.0, 5.879592468681765},
    {1000000.0, -2.8061338784306984},
};

inline constexpr RefPair kRefZeros[30] = {
    {1.0, 14.134725141734695},
    {2.0, 21.022039638771556},
    {3.0, 25.01085758014569},
    {4.0, 30.424876125859512},
    {5.0, 32.93506158773919},
    {6.0, 37.586178158825675},
    {7.0, 40.9187190121475},
    {8.0, 43.327073280915},
    {9.0, 48.00515088116716},
    {10.0, 49.7738324776723},
    {11.0, 52.970321477714464},
    {12.0, 56.44624769706339},
    {13.0, 59.34704400260235},
    {14.0, 60.83177852460981},
    {15.0, 65.1125440480816},
    {16.0, 67.07981052949417},
    {17.0, 69.54640171117398},
    {18.0, 72.0671576744819},
    {19.0, 75.70469069908393},
    {20.0, 77.1448400688748},
    {21.0, 79.33737502024937},
    {22.0, 82.91038085408603},
    {23.0, 84.73549298051705},
    {24.0, 87.42527461312523},
    {25.0, 88.80911120763446},
    {26.0, 92.49189927055849},
    {27.0, 94.65134404051989},
    {28.0, 95.87063422824531},
    {29.0, 98.83119421819369},
    {30.0, 101.31785100573138},
};

inline constexpr RefPair kRefTheta[13] = {
    {0.5, -1.125052715405563},
    {1.0, -1.7675479528122904},
    {2.0, -2.5259109188161326},
    {5.0, -3.4596203753634627},
    {6.283185307179586, -3.530971066598538},
    {10.0, -3.0670743962898954},
    {17.845599540551, 7.313480723192036e-11},
    {30.0, 8.05780013656399},
    {100.0, 87.97216523178722},
    {400.0, 630.3248491413809},
    {1000.0, 2034.5464280380315},
    {10000.0, 31861.92383083582},
    {1000000.0, 5488816.3530784035},
};

inline constexpr RefPair kRefHl[2] = {
    {100.0, 295.63509905471915},
    {1000.0, 5212.507763337782},
};

inline constexpr double kRefGramPoint0 = 17.84559954041086;

}  // namespace zladder::detail
