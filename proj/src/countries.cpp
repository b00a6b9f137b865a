#include "emgeo/countries.hpp"

#include "emgeo/strings.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace emgeo {

namespace {

struct CountryName {
    const char* name;
    const char* alpha2;
};

// ISO 3166-1 English short names (trailing "(the)" articles dropped) plus
// the long forms EM-DAT exports carry and common aliases.
const CountryName kCountryNames[] = {
    {"Afghanistan", "AF"},
    {"Åland Islands", "AX"},
    {"Aland Islands", "AX"},
    {"Albania", "AL"},
    {"Algeria", "DZ"},
    {"American Samoa", "AS"},
    {"Andorra", "AD"},
    {"Angola", "AO"},
    {"Anguilla", "AI"},
    {"Antarctica", "AQ"},
    {"Antigua and Barbuda", "AG"},
    {"Argentina", "AR"},
    {"Armenia", "AM"},
    {"Aruba", "AW"},
    {"Australia", "AU"},
    {"Austria", "AT"},
    {"Azerbaijan", "AZ"},
    {"Bahamas", "BS"},
    {"Bahrain", "BH"},
    {"Bangladesh", "BD"},
    {"Barbados", "BB"},
    {"Belarus", "BY"},
    {"Belgium", "BE"},
    {"Belize", "BZ"},
    {"Benin", "BJ"},
    {"Bermuda", "BM"},
    {"Bhutan", "BT"},
    {"Bolivia", "BO"},
    {"Bolivia (Plurinational State of)", "BO"},
    {"Bonaire, Sint Eustatius and Saba", "BQ"},
    {"Bosnia and Herzegovina", "BA"},
    {"Botswana", "BW"},
    {"Bouvet Island", "BV"},
    {"Brazil", "BR"},
    {"British Indian Ocean Territory", "IO"},
    {"British Virgin Islands", "VG"},
    {"Brunei", "BN"},
    {"Brunei Darussalam", "BN"},
    {"Bulgaria", "BG"},
    {"Burkina Faso", "BF"},
    {"Burma", "MM"},
    {"Burundi", "BI"},
    {"Cabo Verde", "CV"},
    {"Cambodia", "KH"},
    {"Cameroon", "CM"},
    {"Canada", "CA"},
    {"Cape Verde", "CV"},
    {"Cayman Islands", "KY"},
    {"Central African Republic", "CF"},
    {"Chad", "TD"},
    {"Chile", "CL"},
    {"China", "CN"},
    {"Christmas Island", "CX"},
    {"Cocos (Keeling) Islands", "CC"},
    {"Cocos Islands", "CC"},
    {"Colombia", "CO"},
    {"Comoros", "KM"},
    {"Congo", "CG"},
    {"Congo (the Democratic Republic of the)", "CD"},
    {"Cook Islands", "CK"},
    {"Costa Rica", "CR"},
    {"Côte d'Ivoire", "CI"},
    {"Cote d'Ivoire", "CI"},
    {"Croatia", "HR"},
    {"Cuba", "CU"},
    {"Curaçao", "CW"},
    {"Curacao", "CW"},
    {"Cyprus", "CY"},
    {"Czechia", "CZ"},
    {"Czech Republic", "CZ"},
    {"Democratic Republic of the Congo", "CD"},
    {"Denmark", "DK"},
    {"Djibouti", "DJ"},
    {"Dominica", "DM"},
    {"Dominican Republic", "DO"},
    {"East Timor", "TL"},
    {"Ecuador", "EC"},
    {"Egypt", "EG"},
    {"El Salvador", "SV"},
    {"Equatorial Guinea", "GQ"},
    {"Eritrea", "ER"},
    {"Estonia", "EE"},
    {"Eswatini", "SZ"},
    {"Ethiopia", "ET"},
    {"Falkland Islands", "FK"},
    {"Falkland Islands (the) [Malvinas]", "FK"},
    {"Faroe Islands", "FO"},
    {"Fiji", "FJ"},
    {"Finland", "FI"},
    {"France", "FR"},
    {"French Guiana", "GF"},
    {"French Polynesia", "PF"},
    {"French Southern Territories", "TF"},
    {"Gabon", "GA"},
    {"Gambia", "GM"},
    {"Georgia", "GE"},
    {"Germany", "DE"},
    {"Ghana", "GH"},
    {"Gibraltar", "GI"},
    {"Greece", "GR"},
    {"Greenland", "GL"},
    {"Grenada", "GD"},
    {"Guadeloupe", "GP"},
    {"Guam", "GU"},
    {"Guatemala", "GT"},
    {"Guernsey", "GG"},
    {"Guinea", "GN"},
    {"Guinea-Bissau", "GW"},
    {"Guyana", "GY"},
    {"Haiti", "HT"},
    {"Heard Island and McDonald Islands", "HM"},
    {"Holy See", "VA"},
    {"Honduras", "HN"},
    {"Hong Kong", "HK"},
    {"Hungary", "HU"},
    {"Iceland", "IS"},
    {"India", "IN"},
    {"Indonesia", "ID"},
    {"Iran", "IR"},
    {"Iran (Islamic Republic of)", "IR"},
    {"Iraq", "IQ"},
    {"Ireland", "IE"},
    {"Isle of Man", "IM"},
    {"Israel", "IL"},
    {"Italy", "IT"},
    {"Ivory Coast", "CI"},
    {"Jamaica", "JM"},
    {"Japan", "JP"},
    {"Jersey", "JE"},
    {"Jordan", "JO"},
    {"Kazakhstan", "KZ"},
    {"Kenya", "KE"},
    {"Kiribati", "KI"},
    {"Korea (the Democratic People's Republic of)", "KP"},
    {"Korea (the Republic of)", "KR"},
    {"Kosovo", "XK"},
    {"Kuwait", "KW"},
    {"Kyrgyzstan", "KG"},
    {"Lao People's Democratic Republic", "LA"},
    {"Laos", "LA"},
    {"Latvia", "LV"},
    {"Lebanon", "LB"},
    {"Lesotho", "LS"},
    {"Liberia", "LR"},
    {"Libya", "LY"},
    {"Liechtenstein", "LI"},
    {"Lithuania", "LT"},
    {"Luxembourg", "LU"},
    {"Macao", "MO"},
    {"Macau", "MO"},
    {"Macedonia", "MK"},
    {"Madagascar", "MG"},
    {"Malawi", "MW"},
    {"Malaysia", "MY"},
    {"Maldives", "MV"},
    {"Mali", "ML"},
    {"Malta", "MT"},
    {"Marshall Islands", "MH"},
    {"Martinique", "MQ"},
    {"Mauritania", "MR"},
    {"Mauritius", "MU"},
    {"Mayotte", "YT"},
    {"Mexico", "MX"},
    {"Micronesia", "FM"},
    {"Micronesia (Federated States of)", "FM"},
    {"Moldova", "MD"},
    {"Monaco", "MC"},
    {"Mongolia", "MN"},
    {"Montenegro", "ME"},
    {"Montserrat", "MS"},
    {"Morocco", "MA"},
    {"Mozambique", "MZ"},
    {"Myanmar", "MM"},
    {"Namibia", "NA"},
    {"Nauru", "NR"},
    {"Nepal", "NP"},
    {"Netherlands", "NL"},
    {"New Caledonia", "NC"},
    {"New Zealand", "NZ"},
    {"Nicaragua", "NI"},
    {"Niger", "NE"},
    {"Nigeria", "NG"},
    {"Niue", "NU"},
    {"Norfolk Island", "NF"},
    {"North Korea", "KP"},
    {"North Macedonia", "MK"},
    {"Northern Mariana Islands", "MP"},
    {"Norway", "NO"},
    {"Oman", "OM"},
    {"Pakistan", "PK"},
    {"Palau", "PW"},
    {"Palestine", "PS"},
    {"Palestine, State of", "PS"},
    {"Panama", "PA"},
    {"Papua New Guinea", "PG"},
    {"Paraguay", "PY"},
    {"Peru", "PE"},
    {"Philippines", "PH"},
    {"Pitcairn", "PN"},
    {"Poland", "PL"},
    {"Portugal", "PT"},
    {"Puerto Rico", "PR"},
    {"Qatar", "QA"},
    {"Republic of North Macedonia", "MK"},
    {"Réunion", "RE"},
    {"Reunion", "RE"},
    {"Romania", "RO"},
    {"Russia", "RU"},
    {"Russian Federation", "RU"},
    {"Rwanda", "RW"},
    {"Saint Barthélemy", "BL"},
    {"Saint Barthelemy", "BL"},
    {"Saint Helena, Ascension and Tristan da Cunha", "SH"},
    {"Saint Helena", "SH"},
    {"Saint Kitts and Nevis", "KN"},
    {"Saint Lucia", "LC"},
    {"Saint Martin (French part)", "MF"},
    {"Saint Martin", "MF"},
    {"Saint Pierre and Miquelon", "PM"},
    {"Saint Vincent and the Grenadines", "VC"},
    {"Samoa", "WS"},
    {"San Marino", "SM"},
    {"Sao Tome and Principe", "ST"},
    {"Saudi Arabia", "SA"},
    {"Senegal", "SN"},
    {"Serbia", "RS"},
    {"Seychelles", "SC"},
    {"Sierra Leone", "SL"},
    {"Singapore", "SG"},
    {"Sint Maarten (Dutch part)", "SX"},
    {"Sint Maarten", "SX"},
    {"Slovakia", "SK"},
    {"Slovenia", "SI"},
    {"Solomon Islands", "SB"},
    {"Somalia", "SO"},
    {"South Africa", "ZA"},
    {"South Georgia and the South Sandwich Islands", "GS"},
    {"South Korea", "KR"},
    {"South Sudan", "SS"},
    {"Spain", "ES"},
    {"Sri Lanka", "LK"},
    {"State of Palestine", "PS"},
    {"Sudan", "SD"},
    {"Suriname", "SR"},
    {"Svalbard and Jan Mayen", "SJ"},
    {"Swaziland", "SZ"},
    {"Sweden", "SE"},
    {"Switzerland", "CH"},
    {"Syria", "SY"},
    {"Syrian Arab Republic", "SY"},
    {"Taiwan", "TW"},
    {"Taiwan (Province of China)", "TW"},
    {"Tajikistan", "TJ"},
    {"Tanzania", "TZ"},
    {"Tanzania, United Republic of", "TZ"},
    {"Thailand", "TH"},
    {"Timor-Leste", "TL"},
    {"Togo", "TG"},
    {"Tokelau", "TK"},
    {"Tonga", "TO"},
    {"Trinidad and Tobago", "TT"},
    {"Tunisia", "TN"},
    {"Turkey", "TR"},
    {"Türkiye", "TR"},
    {"Turkiye", "TR"},
    {"Turkmenistan", "TM"},
    {"Turks and Caicos Islands", "TC"},
    {"Tuvalu", "TV"},
    {"Uganda", "UG"},
    {"UK", "GB"},
    {"Ukraine", "UA"},
    {"United Arab Emirates", "AE"},
    {"United Kingdom", "GB"},
    {"United Kingdom of Great Britain and Northern Ireland", "GB"},
    {"United Republic of Tanzania", "TZ"},
    {"United States", "US"},
    {"United States Minor Outlying Islands", "UM"},
    {"United States of America", "US"},
    {"United States Virgin Islands", "VI"},
    {"Uruguay", "UY"},
    {"US Virgin Islands", "VI"},
    {"USA", "US"},
    {"Uzbekistan", "UZ"},
    {"Vanuatu", "VU"},
    {"Vatican City", "VA"},
    {"Venezuela", "VE"},
    {"Venezuela (Bolivarian Republic of)", "VE"},
    {"Viet Nam", "VN"},
    {"Vietnam", "VN"},
    {"Virgin Islands (British)", "VG"},
    {"Virgin Islands (U.S.)", "VI"},
    {"Wallis and Futuna", "WF"},
    {"Western Sahara", "EH"},
    {"Yemen", "YE"},
    {"Zambia", "ZM"},
    {"Zimbabwe", "ZW"},
};

const std::unordered_map<std::string, std::string>& exact_index()
{
    static const auto* index = [] {
        auto* map = new std::unordered_map<std::string, std::string>();
        for (const auto& entry : kCountryNames) {
            map->emplace(entry.name, entry.alpha2);
        }
        return map;
    }();
    return *index;
}

const std::unordered_map<std::string, std::string>& lowercase_index()
{
    static const auto* index = [] {
        auto* map = new std::unordered_map<std::string, std::string>();
        for (const auto& entry : kCountryNames) {
            map->emplace(str::to_lower(entry.name), entry.alpha2);
        }
        return map;
    }();
    return *index;
}

std::optional<std::string> lookup(const std::string& name)
{
    if (auto it = exact_index().find(name); it != exact_index().end()) {
        return it->second;
    }
    if (auto it = lowercase_index().find(str::to_lower(name)); it != lowercase_index().end()) {
        return it->second;
    }
    return std::nullopt;
}

} // namespace

std::string strip_trailing_parentheticals(std::string_view name)
{
    std::string out(str::trim(name));
    while (!out.empty() && out.back() == ')') {
        auto open = out.rfind('(');
        if (open == std::string::npos) {
            break;
        }
        out.erase(open);
        out = std::string(str::trim(out));
    }
    return out;
}

std::optional<std::string> country_to_iso2(std::string_view country_name)
{
    const std::string raw(str::trim(country_name));
    if (raw.empty()) {
        return std::nullopt;
    }
    if (auto code = lookup(raw); code.has_value()) {
        return code;
    }
    const std::string stripped = strip_trailing_parentheticals(raw);
    if (stripped.empty() || stripped == raw) {
        return std::nullopt;
    }
    return lookup(stripped);
}

} // namespace emgeo
