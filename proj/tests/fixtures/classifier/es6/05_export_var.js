var count = 0;
export var limit = 10;
