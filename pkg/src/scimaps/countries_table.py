"""Canonical country tokens in the style of citation-index address fields.

Multi-word names are joined with hyphens so the tokens are usable as network
vertex labels. ``ALIASES`` maps alternate spellings (after uppercasing and
whitespace collapsing) onto canonical tokens.
"""

COUNTRIES = frozenset("""
AFGHANISTAN ALBANIA ALGERIA ANDORRA ANGOLA ANTIGUA-&-BARBU ARGENTINA ARMENIA
AUSTRALIA AUSTRIA AZERBAIJAN BAHAMAS BAHRAIN BANGLADESH BARBADOS BELARUS
BELGIUM BELIZE BENIN BERMUDA BHUTAN BOLIVIA BOSNIA-&-HERCEG BOTSWANA BRAZIL
BRUNEI BULGARIA BURKINA-FASO BURUNDI CAMBODIA CAMEROON CANADA CAPE-VERDE
CENT-AFR-REPUBL CHAD CHILE COLOMBIA COMOROS CONGO COSTA-RICA COTE-IVOIRE
CROATIA CUBA CYPRUS CZECH-REPUBLIC CZECHOSLOVAKIA DEM-REP-CONGO DENMARK
DJIBOUTI DOMINICA DOMINICAN-REP ECUADOR EGYPT EL-SALVADOR ENGLAND
EQUAT-GUINEA ERITREA ESTONIA ETHIOPIA FIJI FINLAND FRANCE FR-POLYNESIA
GABON GAMBIA GEORGIA GERMANY GER-DEM-REP GHANA GREECE GREENLAND GRENADA
GUADELOUPE GUAM GUATEMALA GUINEA GUINEA-BISSAU GUYANA HAITI HONDURAS
HUNGARY ICELAND INDIA INDONESIA IRAN IRAQ IRELAND ISRAEL ITALY JAMAICA
JAPAN JORDAN KAZAKHSTAN KENYA KIRIBATI KUWAIT KYRGYZSTAN LAOS LATVIA
LEBANON LESOTHO LIBERIA LIBYA LIECHTENSTEIN LITHUANIA LUXEMBOURG MACEDONIA
MADAGASCAR MALAWI MALAYSIA MALDIVES MALI MALTA MARSHALL-ISLAND MARTINIQUE
MAURITANIA MAURITIUS MEXICO MICRONESIA MOLDOVA MONACO MONGOLIA MONTENEGRO
MOROCCO MOZAMBIQUE MYANMAR NAMIBIA NEPAL NETHERLANDS NETH-ANTILLES
NEW-CALEDONIA NEW-ZEALAND NICARAGUA NIGER NIGERIA NORTH-IRELAND NORTH-KOREA
NORWAY OMAN PAKISTAN PALAU PANAMA PAPUA-N-GUINEA PARAGUAY PEOPLES-R-CHINA
PERU PHILIPPINES POLAND PORTUGAL PUERTO-RICO QATAR ROMANIA RUSSIA RWANDA
SAMOA SAN-MARINO SAUDI-ARABIA SCOTLAND SENEGAL SERBIA SEYCHELLES
SIERRA-LEONE SINGAPORE SLOVAKIA SLOVENIA SOLOMON-ISLANDS SOMALIA
SOUTH-AFRICA SOUTH-KOREA SPAIN SRI-LANKA ST-LUCIA SUDAN SURINAME SWAZILAND
SWEDEN SWITZERLAND SYRIA TAIWAN TAJIKISTAN TANZANIA THAILAND TOGO TONGA
TRINID-&-TOBAGO TUNISIA TURKEY TURKMENISTAN UGANDA UK UKRAINE
U-ARAB-EMIRATES URUGUAY USA USSR UZBEKISTAN VANUATU VATICAN VENEZUELA
VIETNAM WALES YEMEN YUGOSLAVIA ZAMBIA ZIMBABWE
""".split())

ALIASES = {
    "PEOPLES R CHINA": "PEOPLES-R-CHINA",
    "PR CHINA": "PEOPLES-R-CHINA",
    "P R CHINA": "PEOPLES-R-CHINA",
    "CHINA": "PEOPLES-R-CHINA",
    "FED REP GER": "GERMANY",
    "W GERMANY": "GERMANY",
    "WEST GERMANY": "GERMANY",
    "BUNDES REPUBLIK": "GERMANY",
    "GER DEM REP": "GER-DEM-REP",
    "E GERMANY": "GER-DEM-REP",
    "NORTH IRELAND": "NORTH-IRELAND",
    "NORTHERN IRELAND": "NORTH-IRELAND",
    "N IRELAND": "NORTH-IRELAND",
    "UNITED KINGDOM": "UK",
    "GREAT BRITAIN": "UK",
    "UNITED STATES": "USA",
    "UNITED STATES OF AMERICA": "USA",
    "U S A": "USA",
    "RUSSIAN FEDERATION": "RUSSIA",
    "REP OF KOREA": "SOUTH-KOREA",
    "KOREA": "SOUTH-KOREA",
    "THE NETHERLANDS": "NETHERLANDS",
    "HOLLAND": "NETHERLANDS",
    "CZECH REPUBLIC": "CZECH-REPUBLIC",
    "SLOVAK REPUBLIC": "SLOVAKIA",
    "U ARAB EMIRATES": "U-ARAB-EMIRATES",
    "IVORY COAST": "COTE-IVOIRE",
}

UK_CONSTITUENTS = frozenset({"ENGLAND", "SCOTLAND", "WALES", "NORTH-IRELAND"})
