/// Depth-2 planar counts for g = 0, …, 87.
pub const DEPTH2_PLANAR: [&str; 88] = [
    "0", "0", "4", "14",
    "48", "143", "412", "1176",
    "3332", "9287", "25630", "70574",
    "194290", "534127", "1465245", "4011126",
    "10961060", "29903045", "81429566", "221325445",
    "600659520", "1628709545", "4414300344", "11958683448",
    "32372736224", "87541376014", "236440731005", "637862590414",
    "1719101643609", "4629525846179", "12459909670309", "33519288444409",
    "90136456224494", "242283690207403", "650936600796631", "1747891377256538",
    "4690642296534889", "12580211126984860", "33720107313956188", "90333780254836434",
    "241874514915972126", "647335685418582083", "1731773886602728051", "4631250509157734047",
    "12381460478034483318", "33092335174560159808", "88424351052896671941", "236212572399447537141",
    "630827866930313644489", "1684152607151129735036", "4494703368297811355435", "11991135688827147388952",
    "31978416951800296071831", "85250406896754816152086", "227191018857947112334513", "605282191834901220600054",
    "1612185156193460856587117", "4293176639427000769790008", "11430408760122793960003154", "30427812808611490639896278",
    "80985430675574711412980916", "215509768877495232586787465", "573383202769145098057975309", "1525226173996843571825323845",
    "4056291288735430727151164447", "10785145844024419432004114254", "28669745119349640035022238173", "76194552501074658365836459077",
    "202455550832885616509159776241", "537831233961624997213173542362", "1428495078136679841557819365161", "3793447898643022179662596244366",
    "10072060467737818893614010324770", "26738498106822231994902593485746", "70973288195363677225963531535048", "188363010271347363103428460974784",
    "499851837500292856875731277058977", "1326272602033306568840724593782556", "3518599430142665518024919482166660", "9333642921927341197807452053383505",
    "24755693987767914166837735101399289", "65650741449233606049989435056291703", "174077611139574752854463708279935997", "461512525629540684214148624663888012",
    "1223377600065175892800725928261667064", "3242455319972149681281785135048236895", "8592605228187134388298469836076911868", "22767484181294798508811998075481662904",
];

/// Planar counts by genus (rows g = 1, …, 14) and depth (columns q = 1, …, 5).
pub const BY_DEPTH_PLANAR: [[u64; 5]; 14] = [
    [2, 0, 0, 0, 0],
    [3, 4, 0, 0, 0],
    [5, 14, 4, 0, 0],
    [7, 48, 12, 4, 0],
    [11, 143, 44, 8, 4],
    [15, 412, 163, 36, 8],
    [22, 1176, 550, 106, 28],
    [30, 3332, 1751, 333, 86],
    [42, 9287, 5514, 1009, 254],
    [56, 25630, 17080, 3065, 737],
    [77, 70574, 52028, 9128, 2133],
    [101, 194290, 156358, 26985, 6053],
    [135, 534127, 465726, 78983, 16992],
    [176, 1465245, 1377185, 228727, 47225],
];

/// Published counts for shapes [3] and [2,1], g = 1, …, 35.
pub const SHAPE3_PUBLISHED: [(u64, u64); 35] = [
    (0, 0), (1, 1), (4, 4), (8, 10), (14, 22),
    (27, 43), (45, 76), (73, 129), (118, 210), (189, 331),
    (293, 510), (454, 771), (684, 1144), (1028, 1675), (1526, 2422),
    (2241, 3462), (3251, 4900), (4691, 6874), (6697, 9560), (9503, 13198),
    (13387, 18092), (18747, 24636), (26074, 33344), (36073, 44873), (49595, 60058),
    (67874, 79977), (92415, 105990), (125261, 139819), (168974, 183648), (227020, 240224),
    (303674, 312984), (404646, 406255), (537092, 525424), (710360, 677201), (936150, 869940),
];
