#pragma once

// Chebyshev coefficient tables (variable z = 2p - 1, p the fractional part of
// sqrt(t/2pi)) for the Riemann-Siegel remainder terms C_0..C_6.  Generated by
// tools/gen_rs_coeffs.py from an mpmath reference fit; do not edit by hand.

#include <cstddef>

namespace zladder::specfun::detail {

inline constexpr double kRsC0[40] = {
    6.42667286239768432e-01, 4.49959315276068179e-17, 2.71972999997855236e-01,
    1.51165459490225933e-16, 1.07386058193402883e-02, 4.65510556696464032e-17,
    -1.37438152963382078e-03, 7.05105894966954674e-17, -1.24682218803342804e-04,
    3.56363182130411436e-17, -5.76459970642196623e-07, 2.70452448066934743e-17,
    2.72806742945718697e-07, 2.96783787630037972e-17, 8.07795276772000231e-09,
    7.55896022418644694e-17, -2.08846189044691068e-10, 1.16542296932265308e-17,
    -1.31155965465149669e-11, 4.62097296518299062e-17, -1.41282926096907525e-14,
    4.00397595150971791e-17, 1.04156661942222965e-14, 4.07281908776480973e-17,
    5.28760961721461499e-16, 7.71930664756624682e-17, 2.19298293074037017e-16,
    6.74195435539315455e-17, -3.41047949363469777e-16, 7.77713701215697314e-17,
    -2.47455812861935543e-16, 5.77532605121511611e-17, -2.45337033619640046e-16,
    7.81796246655143616e-17, -3.56384156331209607e-16, 3.64275186760594551e-17,
    -3.39734763279827048e-16, 1.45119452640203390e-16, -6.64800153793717830e-16,
    4.08233863535108187e-17
};

inline constexpr double kRsC1[40] = {
    -9.98813339062349029e-33, 1.06979139210030081e-02, -1.86035412023343955e-17,
    1.71706512433778859e-02, -9.17950703615559302e-18, 2.79321114978847360e-03,
    8.91705277555235918e-19, -3.63756537192738865e-05, 1.38552900919186328e-17,
    -2.71089552311417094e-05, -1.68053380724114832e-18, -1.04837498667340167e-06,
    1.37657522936134376e-18, 5.88646716703717215e-08, -3.14332358900759015e-18,
    4.32296727864353039e-09, 7.35636025441275536e-19, -1.13695882466752089e-11,
    6.67921480518823128e-18, -6.69982984570703001e-12, 1.38856575909740534e-18,
    -1.00792567155646552e-13, 2.05574199737295613e-18, 5.15148684677597852e-15,
    1.69147825991713159e-18, 1.56235017627099702e-16, 6.92764504595931869e-18,
    1.97145577832481376e-18, 8.95700251300544642e-18, 8.19284223346842809e-19,
    -5.99316684059905744e-18, -7.20857429636082169e-18, -1.21565067624438549e-17,
    -5.09912848673923358e-18, -7.34395695108568558e-18, -5.88464959681898273e-18,
    -1.46412684851418727e-17, -1.73978707178754336e-17, 8.69161962982994793e-18,
    -6.93865979800840829e-18
};

inline constexpr double kRsC2[39] = {
    3.14611585398891225e-03, -5.69722193372176859e-19, -2.30878388453074988e-03,
    -1.26176656572935460e-18, 5.76982076668988703e-05, -7.73575962222711131e-19,
    3.52388620236660671e-04, -1.01124000551942593e-18, 2.52466674586855050e-05,
    -7.90018090007889240e-19, -3.44282119719375330e-06, -6.10517401644558557e-19,
    -3.53507455661833931e-07, -1.02628330816946124e-18, 3.73083018595304475e-09,
    -7.93048527206677526e-19, 1.27769518705576695e-09, -4.07999850156270458e-19,
    2.18746159091669706e-11, -5.85800398241942595e-19, -1.91414182679165867e-12,
    -3.28213236344947632e-19, -6.56296128740401627e-14, -6.17247960120159551e-19,
    1.25588908223346791e-15, -5.68614213038646510e-19, 7.98555037839056124e-17,
    -5.48340723404532321e-19, 2.40811311756950715e-18, -3.35971290799624341e-19,
    1.83487847734015679e-18, -5.12580538200679717e-19, 1.42426198333352040e-18,
    -3.15965180367699441e-19, 2.23869707884233975e-18, -4.71936109172433709e-19,
    2.74860273235056995e-18, -7.58410294213463232e-19, 4.46282702116597294e-18
};

inline constexpr double kRsC3[28] = {
    1.47427577293748188e-18, 7.12325622120202367e-05, 4.24206097201780813e-19,
    2.32343052981650542e-04, 7.86570754721319490e-20, -1.29299120454724818e-04,
    -1.25901295751981638e-19, 1.80744964136715116e-05, 1.53766757093354862e-19,
    6.52618518722050219e-06, -1.19047911559466188e-20, -1.16963653785119696e-07,
    -2.96849146904570689e-20, -7.34947612651663018e-08, 1.24649020880326497e-20,
    -1.77509100765667887e-09, -5.57199348847013071e-20, 2.55555296143526557e-10,
    5.07318923345568662e-20, 1.13766366569219790e-11, 8.36056063593960828e-20,
    -3.34986319861885754e-13, 1.13178080388687930e-21, -2.55373904790305126e-14,
    3.70405651731729653e-20, 6.77216067885741131e-17, 1.04914922635468101e-19,
    2.98582072562083818e-17
};

inline constexpr double kRsC4[29] = {
    1.67657452466844629e-04, 1.70689526743603881e-15, -2.27287689434213286e-04,
    -2.20385972445359405e-16, 6.47738718844394001e-05, 1.57282920273135668e-17,
    -8.49220050011621069e-06, -2.71584647302622239e-18, -2.61614072452403954e-06,
    1.26932049512392139e-18, 8.33676496873716212e-07, -6.98319836058505798e-19,
    6.32470403754101870e-08, 1.58161573246830155e-19, -1.00599494028567336e-08,
    -9.74066815295456409e-20, -7.82267720324523639e-10, -6.20774898221159741e-21,
    3.16765828293999109e-11, -5.07059365612264716e-20, 3.50069443074052786e-12,
    -1.64714663311662892e-20, -1.43148523993476229e-14, -6.90231876731648737e-20,
    -7.26967507194882124e-15, -5.24923635274769116e-20, -8.79524642803140652e-17,
    -5.36547444720413456e-20, 8.39110464973124797e-18
};

inline constexpr double kRsC5[30] = {
    6.87174723380743498e-15, 8.82884522427580999e-05, 2.22983978454893920e-15,
    -1.56286849556898640e-05, 1.14518350365299137e-15, -1.83424477945095141e-07,
    -5.55520359355167974e-16, 2.10972678765546731e-06, 1.33239375330872655e-16,
    -6.65701617491935852e-07, -2.86706637036938432e-17, 2.77147412489940836e-08,
    4.89460377023085198e-18, 1.81112493610125914e-08, -4.56252934453164951e-19,
    -5.76589078087263542e-10, 4.37351976263780761e-21, -1.86750334599469035e-10,
    1.98408535450328844e-20, -1.10516052114965997e-13, -6.51380126223326044e-21,
    7.87064364688664642e-13, 4.38509449167599102e-20, 1.44583414637941507e-14,
    3.19210788091857135e-21, -1.58144462831876926e-15, -8.26219642021261739e-21,
    -4.91439556751643168e-17, 2.23345676389993933e-20, 1.61094043331135971e-18
};

inline constexpr double kRsC6[29] = {
    1.21897418860133696e-05, 4.45124798805449868e-12, -1.38297602077554453e-05,
    -5.78352977178738354e-13, 5.11096725434210207e-06, 4.10769550189667966e-14,
    -2.04581362190262513e-06, -6.72150700590896141e-15, 4.93813658966273727e-07,
    3.45441392116759474e-15, -3.61875271559950181e-08, -1.85192193623072790e-15,
    -1.28769053084163788e-08, 6.21925214800521832e-16, 2.57441213376587310e-09,
    -1.30110522147875135e-16, 1.36414571242767098e-10, 1.45461340003240635e-17,
    -3.03243964559009141e-11, 1.40752761597990361e-19, -1.32166702322555588e-12,
    -2.74588040640120644e-19, 1.30316503201036265e-13, 1.58847841176727615e-20,
    6.63587187105595969e-15, 3.12185424472790573e-20, -2.46025679976508378e-16,
    -1.40795988652465053e-20, -1.67897089181391731e-17
};

struct RsTable { const double* c; std::size_t n; };

inline constexpr RsTable kRsTables[7] = {
    {kRsC0, 40},
    {kRsC1, 40},
    {kRsC2, 39},
    {kRsC3, 28},
    {kRsC4, 29},
    {kRsC5, 30},
    {kRsC6, 29},
};

}  // namespace zladder::specfun::detail
