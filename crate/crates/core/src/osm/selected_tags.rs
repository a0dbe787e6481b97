//! Selected tag rows used by the fixed-vocabulary embedding.
//!
//! One row per `(category, key, value)`; a `None` value matches any value of
//! the key. Water and the three road classes are collective slots and are
//! appended by the vocabulary builder, not listed here.

use super::Category;
use Category::*;

pub(crate) const SELECTED_TAG_ROWS: &[(Category, &str, Option<&str>)] = &[
    (Aerialway, "aerialway", Some("cable_car")),
    (Aerialway, "aerialway", Some("chair_lift")),
    (Aerialway, "aerialway", Some("drag_lift")),
    (Aerialway, "aerialway", Some("gondola")),
    (Aerialway, "aerialway", Some("goods")),
    (Aerialway, "aerialway", Some("j-bar")),
    (Aerialway, "aerialway", Some("magic_carpet")),
    (Aerialway, "aerialway", Some("mixed_lift")),
    (Aerialway, "aerialway", Some("platter")),
    (Aerialway, "aerialway", Some("pylon")),
    (Aerialway, "aerialway", Some("rope_tow")),
    (Aerialway, "aerialway", Some("station")),
    (Aerialway, "aerialway", Some("t-bar")),
    (Aerialway, "aerialway", Some("zip_line")),
    (Airports, "aeroway", Some("aerodrome")),
    (Airports, "aeroway", Some("heliport")),
    (Buildings, "building", None),
    (CultureAndEntertainment, "amenity", Some("arts_centre")),
    (CultureAndEntertainment, "amenity", Some("brothel")),
    (CultureAndEntertainment, "amenity", Some("casino")),
    (CultureAndEntertainment, "amenity", Some("cinema")),
    (CultureAndEntertainment, "amenity", Some("community_centre")),
    (CultureAndEntertainment, "amenity", Some("gambling")),
    (CultureAndEntertainment, "amenity", Some("nightclub")),
    (CultureAndEntertainment, "amenity", Some("planetarium")),
    (CultureAndEntertainment, "amenity", Some("public_bookcase")),
    (CultureAndEntertainment, "amenity", Some("social_centre")),
    (CultureAndEntertainment, "amenity", Some("stripclub")),
    (CultureAndEntertainment, "amenity", Some("studio")),
    (CultureAndEntertainment, "amenity", Some("theatre")),
    (Education, "amenity", Some("college")),
    (Education, "amenity", Some("driving_school")),
    (Education, "amenity", Some("kindergarten")),
    (Education, "amenity", Some("language_school")),
    (Education, "amenity", Some("library")),
    (Education, "amenity", Some("music_school")),
    (Education, "amenity", Some("school")),
    (Education, "amenity", Some("toy_library")),
    (Education, "amenity", Some("university")),
    (Emergency, "emergency", None),
    (Finances, "amenity", Some("atm")),
    (Finances, "amenity", Some("bank")),
    (Finances, "amenity", Some("bureau_de_change")),
    (Healthcare, "amenity", Some("baby_hatch")),
    (Healthcare, "amenity", Some("clinic")),
    (Healthcare, "amenity", Some("dentist")),
    (Healthcare, "amenity", Some("doctors")),
    (Healthcare, "amenity", Some("hospital")),
    (Healthcare, "amenity", Some("nursing_home")),
    (Healthcare, "amenity", Some("pharmacy")),
    (Healthcare, "amenity", Some("social_facility")),
    (Healthcare, "amenity", Some("veterinary")),
    (Historic, "historic", Some("aqueduct")),
    (Historic, "historic", Some("battlefield")),
    (Historic, "historic", Some("building")),
    (Historic, "historic", Some("castle")),
    (Historic, "historic", Some("church")),
    (Historic, "historic", Some("citywalls")),
    (Historic, "historic", Some("fort")),
    (Historic, "historic", Some("memorial")),
    (Historic, "historic", Some("monastery")),
    (Historic, "historic", Some("monument")),
    (Historic, "historic", Some("ruins")),
    (Historic, "historic", Some("tower")),
    (Leisure, "amenity", Some("dive_centre")),
    (Leisure, "amenity", Some("public_bath")),
    (Leisure, "leisure", Some("adult_gaming_centre")),
    (Leisure, "leisure", Some("amusement_arcade")),
    (Leisure, "leisure", Some("beach_resort")),
    (Leisure, "leisure", Some("common")),
    (Leisure, "leisure", Some("dance")),
    (Leisure, "leisure", Some("dog_park")),
    (Leisure, "leisure", Some("escape_game")),
    (Leisure, "leisure", Some("fitness_centre")),
    (Leisure, "leisure", Some("fitness_station")),
    (Leisure, "leisure", Some("garden")),
    (Leisure, "leisure", Some("hackerspace")),
    (Leisure, "leisure", Some("horse_riding")),
    (Leisure, "leisure", Some("ice_rink")),
    (Leisure, "leisure", Some("marina")),
    (Leisure, "leisure", Some("miniature_golf")),
    (Leisure, "leisure", Some("nature_reserve")),
    (Leisure, "leisure", Some("park")),
    (Leisure, "leisure", Some("pitch")),
    (Leisure, "leisure", Some("sauna")),
    (Leisure, "leisure", Some("slipway")),
    (Leisure, "leisure", Some("sports_centre")),
    (Leisure, "leisure", Some("stadium")),
    (Leisure, "leisure", Some("summer_camp")),
    (Leisure, "leisure", Some("swimming_area")),
    (Leisure, "leisure", Some("swimming_pool")),
    (Leisure, "leisure", Some("track")),
    (Leisure, "leisure", Some("water_park")),
    (Other, "amenity", Some("animal_boarding")),
    (Other, "amenity", Some("animal_shelter")),
    (Other, "amenity", Some("childcare")),
    (Other, "amenity", Some("conference_centre")),
    (Other, "amenity", Some("courthouse")),
    (Other, "amenity", Some("crematorium")),
    (Other, "amenity", Some("embassy")),
    (Other, "amenity", Some("fire_station")),
    (Other, "amenity", Some("grave_yard")),
    (Other, "amenity", Some("internet_cafe")),
    (Other, "amenity", Some("marketplace")),
    (Other, "amenity", Some("monastery")),
    (Other, "amenity", Some("place_of_worship")),
    (Other, "amenity", Some("police")),
    (Other, "amenity", Some("post_office")),
    (Other, "amenity", Some("prison")),
    (Other, "amenity", Some("ranger_station")),
    (Other, "amenity", Some("townhall")),
    (Shops, "shop", Some("agrarian")),
    (Shops, "shop", Some("alcohol")),
    (Shops, "shop", Some("anime")),
    (Shops, "shop", Some("antiques")),
    (Shops, "shop", Some("appliance")),
    (Shops, "shop", Some("art")),
    (Shops, "shop", Some("atv")),
    (Shops, "shop", Some("baby_goods")),
    (Shops, "shop", Some("bag")),
    (Shops, "shop", Some("bakery")),
    (Shops, "shop", Some("bathroom_furnishing")),
    (Shops, "shop", Some("beauty")),
    (Shops, "shop", Some("bed")),
    (Shops, "shop", Some("beverages")),
    (Shops, "shop", Some("bicycle")),
    (Shops, "shop", Some("boat")),
    (Shops, "shop", Some("bookmaker")),
    (Shops, "shop", Some("books")),
    (Shops, "shop", Some("boutique")),
    (Shops, "shop", Some("brewing_supplies")),
    (Shops, "shop", Some("butcher")),
    (Shops, "shop", Some("camera")),
    (Shops, "shop", Some("candles")),
    (Shops, "shop", Some("cannabis")),
    (Shops, "shop", Some("car")),
    (Shops, "shop", Some("car_parts")),
    (Shops, "shop", Some("car_repair")),
    (Shops, "shop", Some("caravan")),
    (Shops, "shop", Some("carpet")),
    (Shops, "shop", Some("charity")),
    (Shops, "shop", Some("cheese")),
    (Shops, "shop", Some("chemist")),
    (Shops, "shop", Some("chocolate")),
    (Shops, "shop", Some("clothes")),
    (Shops, "shop", Some("coffee")),
    (Shops, "shop", Some("collector")),
    (Shops, "shop", Some("computer")),
    (Shops, "shop", Some("confectionery")),
    (Shops, "shop", Some("convenience")),
    (Shops, "shop", Some("copyshop")),
    (Shops, "shop", Some("cosmetics")),
    (Shops, "shop", Some("craft")),
    (Shops, "shop", Some("curtain")),
    (Shops, "shop", Some("dairy")),
    (Shops, "shop", Some("deli")),
    (Shops, "shop", Some("department_store")),
    (Shops, "shop", Some("doityourself")),
    (Shops, "shop", Some("doors")),
    (Shops, "shop", Some("dry_cleaning")),
    (Shops, "shop", Some("e-cigarette")),
    (Shops, "shop", Some("electrical")),
    (Shops, "shop", Some("electronics")),
    (Shops, "shop", Some("energy")),
    (Shops, "shop", Some("erotic")),
    (Shops, "shop", Some("fabric")),
    (Shops, "shop", Some("farm")),
    (Shops, "shop", Some("fashion_accessories")),
    (Shops, "shop", Some("fireplace")),
    (Shops, "shop", Some("fishing")),
    (Shops, "shop", Some("flooring")),
    (Shops, "shop", Some("florist")),
    (Shops, "shop", Some("frame")),
    (Shops, "shop", Some("frozen_food")),
    (Shops, "shop", Some("fuel")),
    (Shops, "shop", Some("funeral_directors")),
    (Shops, "shop", Some("furniture")),
    (Shops, "shop", Some("games")),
    (Shops, "shop", Some("garden_centre")),
    (Shops, "shop", Some("garden_furniture")),
    (Shops, "shop", Some("gas")),
    (Shops, "shop", Some("general")),
    (Shops, "shop", Some("gift")),
    (Shops, "shop", Some("glaziery")),
    (Shops, "shop", Some("golf")),
    (Shops, "shop", Some("greengrocer")),
    (Shops, "shop", Some("groundskeeping")),
    (Shops, "shop", Some("hairdresser")),
    (Shops, "shop", Some("hairdresser_supply")),
    (Shops, "shop", Some("hardware")),
    (Shops, "shop", Some("health_food")),
    (Shops, "shop", Some("hearing_aids")),
    (Shops, "shop", Some("herbalist")),
    (Shops, "shop", Some("hifi")),
    (Shops, "shop", Some("household_linen")),
    (Shops, "shop", Some("houseware")),
    (Shops, "shop", Some("hunting")),
    (Shops, "shop", Some("ice_cream")),
    (Shops, "shop", Some("interior_decoration")),
    (Shops, "shop", Some("jetski")),
    (Shops, "shop", Some("jewelry")),
    (Shops, "shop", Some("kiosk")),
    (Shops, "shop", Some("kitchen")),
    (Shops, "shop", Some("lamps")),
    (Shops, "shop", Some("laundry")),
    (Shops, "shop", Some("leather")),
    (Shops, "shop", Some("lighting")),
    (Shops, "shop", Some("locksmith")),
    (Shops, "shop", Some("lottery")),
    (Shops, "shop", Some("mall")),
    (Shops, "shop", Some("massage")),
    (Shops, "shop", Some("medical_supply")),
    (Shops, "shop", Some("military_surplus")),
    (Shops, "shop", Some("mobile_phone")),
    (Shops, "shop", Some("model")),
    (Shops, "shop", Some("money_lender")),
    (Shops, "shop", Some("motorcycle")),
    (Shops, "shop", Some("music")),
    (Shops, "shop", Some("musical_instrument")),
    (Shops, "shop", Some("newsagent")),
    (Shops, "shop", Some("nutrition_supplements")),
    (Shops, "shop", Some("optician")),
    (Shops, "shop", Some("organic")),
    (Shops, "shop", Some("outdoor")),
    (Shops, "shop", Some("outpost")),
    (Shops, "shop", Some("paint")),
    (Shops, "shop", Some("party")),
    (Shops, "shop", Some("pasta")),
    (Shops, "shop", Some("pastry")),
    (Shops, "shop", Some("pawnbroker")),
    (Shops, "shop", Some("perfumery")),
    (Shops, "shop", Some("pest_control")),
    (Shops, "shop", Some("pet")),
    (Shops, "shop", Some("pet_grooming")),
    (Shops, "shop", Some("photo")),
    (Shops, "shop", Some("pyrotechnics")),
    (Shops, "shop", Some("radiotechnics")),
    (Shops, "shop", Some("religion")),
    (Shops, "shop", Some("scuba_diving")),
    (Shops, "shop", Some("seafood")),
    (Shops, "shop", Some("second_hand")),
    (Shops, "shop", Some("security")),
    (Shops, "shop", Some("sewing")),
    (Shops, "shop", Some("shoes")),
    (Shops, "shop", Some("ski")),
    (Shops, "shop", Some("snowmobile")),
    (Shops, "shop", Some("spices")),
    (Shops, "shop", Some("sports")),
    (Shops, "shop", Some("stationery")),
    (Shops, "shop", Some("storage_rental")),
    (Shops, "shop", Some("supermarket")),
    (Shops, "shop", Some("swimming_pool")),
    (Shops, "shop", Some("tailor")),
    (Shops, "shop", Some("tattoo")),
    (Shops, "shop", Some("tea")),
    (Shops, "shop", Some("ticket")),
    (Shops, "shop", Some("tiles")),
    (Shops, "shop", Some("tobacco")),
    (Shops, "shop", Some("toys")),
    (Shops, "shop", Some("trade")),
    (Shops, "shop", Some("trailer")),
    (Shops, "shop", Some("travel_agency")),
    (Shops, "shop", Some("trophy")),
    (Shops, "shop", Some("tyres")),
    (Shops, "shop", Some("vacant")),
    (Shops, "shop", Some("vacuum_cleaner")),
    (Shops, "shop", Some("variety_store")),
    (Shops, "shop", Some("video")),
    (Shops, "shop", Some("video_games")),
    (Shops, "shop", Some("watches")),
    (Shops, "shop", Some("water")),
    (Shops, "shop", Some("weapons")),
    (Shops, "shop", Some("wholesale")),
    (Shops, "shop", Some("window_blind")),
    (Shops, "shop", Some("wool")),
    (Sport, "sport", Some("10pin")),
    (Sport, "sport", Some("9pin")),
    (Sport, "sport", Some("aikido")),
    (Sport, "sport", Some("american_football")),
    (Sport, "sport", Some("archery")),
    (Sport, "sport", Some("athletics")),
    (Sport, "sport", Some("australian_football")),
    (Sport, "sport", Some("badminton")),
    (Sport, "sport", Some("bandy")),
    (Sport, "sport", Some("baseball")),
    (Sport, "sport", Some("basketball")),
    (Sport, "sport", Some("beachvolleyball")),
    (Sport, "sport", Some("biathlon")),
    (Sport, "sport", Some("billiards")),
    (Sport, "sport", Some("bmx")),
    (Sport, "sport", Some("bobsleigh")),
    (Sport, "sport", Some("boules")),
    (Sport, "sport", Some("bowls")),
    (Sport, "sport", Some("boxing")),
    (Sport, "sport", Some("bullfighting")),
    (Sport, "sport", Some("canadian_football")),
    (Sport, "sport", Some("canoe")),
    (Sport, "sport", Some("chess")),
    (Sport, "sport", Some("cliff_diving")),
    (Sport, "sport", Some("climbing")),
    (Sport, "sport", Some("climbing_adventure")),
    (Sport, "sport", Some("cockfighting")),
    (Sport, "sport", Some("cricket")),
    (Sport, "sport", Some("croquet")),
    (Sport, "sport", Some("crossfit")),
    (Sport, "sport", Some("curling")),
    (Sport, "sport", Some("cycle_polo")),
    (Sport, "sport", Some("cycling")),
    (Sport, "sport", Some("darts")),
    (Sport, "sport", Some("dog_agility")),
    (Sport, "sport", Some("dog_racing")),
    (Sport, "sport", Some("equestrian")),
    (Sport, "sport", Some("fencing")),
    (Sport, "sport", Some("field_hockey")),
    (Sport, "sport", Some("fitness")),
    (Sport, "sport", Some("five-a-side")),
    (Sport, "sport", Some("floorball")),
    (Sport, "sport", Some("free_flying")),
    (Sport, "sport", Some("futsal")),
    (Sport, "sport", Some("gaelic_games")),
    (Sport, "sport", Some("golf")),
    (Sport, "sport", Some("gymnastics")),
    (Sport, "sport", Some("handball")),
    (Sport, "sport", Some("hapkido")),
    (Sport, "sport", Some("horse_racing")),
    (Sport, "sport", Some("horseshoes")),
    (Sport, "sport", Some("ice_hockey")),
    (Sport, "sport", Some("ice_skating")),
    (Sport, "sport", Some("ice_stock")),
    (Sport, "sport", Some("jiu-jitsu")),
    (Sport, "sport", Some("judo")),
    (Sport, "sport", Some("karate")),
    (Sport, "sport", Some("karting")),
    (Sport, "sport", Some("kickboxing")),
    (Sport, "sport", Some("kitesurfing")),
    (Sport, "sport", Some("korfball")),
    (Sport, "sport", Some("krachtbal")),
    (Sport, "sport", Some("lacrosse")),
    (Sport, "sport", Some("martial_arts")),
    (Sport, "sport", Some("miniature_golf")),
    (Sport, "sport", Some("model_aerodrome")),
    (Sport, "sport", Some("motocross")),
    (Sport, "sport", Some("motor")),
    (Sport, "sport", Some("multi")),
    (Sport, "sport", Some("netball")),
    (Sport, "sport", Some("obstacle_course")),
    (Sport, "sport", Some("orienteering")),
    (Sport, "sport", Some("paddle_tennis")),
    (Sport, "sport", Some("padel")),
    (Sport, "sport", Some("parachuting")),
    (Sport, "sport", Some("parkour")),
    (Sport, "sport", Some("pedal_car_racing")),
    (Sport, "sport", Some("pelota")),
    (Sport, "sport", Some("pesäpallo")),
    (Sport, "sport", Some("pickleball")),
    (Sport, "sport", Some("pilates")),
    (Sport, "sport", Some("pole_dance")),
    (Sport, "sport", Some("racquet")),
    (Sport, "sport", Some("rc_car")),
    (Sport, "sport", Some("roller_skating")),
    (Sport, "sport", Some("rowing")),
    (Sport, "sport", Some("rugby_league")),
    (Sport, "sport", Some("rugby_union")),
    (Sport, "sport", Some("running")),
    (Sport, "sport", Some("sailing")),
    (Sport, "sport", Some("scuba_diving")),
    (Sport, "sport", Some("shooting")),
    (Sport, "sport", Some("shot-put")),
    (Sport, "sport", Some("skateboard")),
    (Sport, "sport", Some("ski_jumping")),
    (Sport, "sport", Some("skiing")),
    (Sport, "sport", Some("snooker")),
    (Sport, "sport", Some("soccer")),
    (Sport, "sport", Some("speedway")),
    (Sport, "sport", Some("squash")),
    (Sport, "sport", Some("sumo")),
    (Sport, "sport", Some("surfing")),
    (Sport, "sport", Some("swimming")),
    (Sport, "sport", Some("table_soccer")),
    (Sport, "sport", Some("table_tennis")),
    (Sport, "sport", Some("taekwondo")),
    (Sport, "sport", Some("tennis")),
    (Sport, "sport", Some("toboggan")),
    (Sport, "sport", Some("ultimate")),
    (Sport, "sport", Some("volleyball")),
    (Sport, "sport", Some("wakeboarding")),
    (Sport, "sport", Some("water_polo")),
    (Sport, "sport", Some("water_ski")),
    (Sport, "sport", Some("weightlifting")),
    (Sport, "sport", Some("wrestling")),
    (Sport, "sport", Some("yoga")),
    (Sport, "sport", Some("zurkhaneh_sport")),
    (Sustenance, "amenity", Some("bar")),
    (Sustenance, "amenity", Some("bbq")),
    (Sustenance, "amenity", Some("biergarten")),
    (Sustenance, "amenity", Some("cafe")),
    (Sustenance, "amenity", Some("fast_food")),
    (Sustenance, "amenity", Some("food_court")),
    (Sustenance, "amenity", Some("ice_cream")),
    (Sustenance, "amenity", Some("pub")),
    (Sustenance, "amenity", Some("restaurant")),
    (Tourism, "tourism", Some("alpine_hut")),
    (Tourism, "tourism", Some("apartment")),
    (Tourism, "tourism", Some("aquarium")),
    (Tourism, "tourism", Some("artwork")),
    (Tourism, "tourism", Some("attraction")),
    (Tourism, "tourism", Some("camp_pitch")),
    (Tourism, "tourism", Some("camp_site")),
    (Tourism, "tourism", Some("caravan_site")),
    (Tourism, "tourism", Some("chalet")),
    (Tourism, "tourism", Some("gallery")),
    (Tourism, "tourism", Some("guest_house")),
    (Tourism, "tourism", Some("hostel")),
    (Tourism, "tourism", Some("hotel")),
    (Tourism, "tourism", Some("information")),
    (Tourism, "tourism", Some("motel")),
    (Tourism, "tourism", Some("museum")),
    (Tourism, "tourism", Some("picnic_site")),
    (Tourism, "tourism", Some("theme_park")),
    (Tourism, "tourism", Some("viewpoint")),
    (Tourism, "tourism", Some("wilderness_hut")),
    (Tourism, "tourism", Some("zoo")),
    (Transportation, "amenity", Some("bicycle_parking")),
    (Transportation, "amenity", Some("bicycle_rental")),
    (Transportation, "amenity", Some("bicycle_repair_station")),
    (Transportation, "amenity", Some("boat_rental")),
    (Transportation, "amenity", Some("boat_sharing")),
    (Transportation, "amenity", Some("bus_station")),
    (Transportation, "amenity", Some("car_rental")),
    (Transportation, "amenity", Some("car_sharing")),
    (Transportation, "amenity", Some("car_wash")),
    (Transportation, "amenity", Some("charging_station")),
    (Transportation, "amenity", Some("clock")),
    (Transportation, "amenity", Some("ferry_terminal")),
    (Transportation, "amenity", Some("motorcycle_parking")),
    (Transportation, "amenity", Some("parking")),
    (Transportation, "amenity", Some("shelter")),
    (Transportation, "amenity", Some("taxi")),
    (Transportation, "public_transport", Some("platform")),
    (Transportation, "public_transport", Some("station")),
    (Transportation, "public_transport", Some("stop_area")),
    (Transportation, "public_transport", Some("stop_position")),
];
